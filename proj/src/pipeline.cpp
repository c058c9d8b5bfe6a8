#include "lvfront/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lvfront/error.hpp"
#include "lvfront/expr.hpp"
#include "lvfront/parallel.hpp"

namespace lvfront {

WaveSolveOptions wave_options(const ExperimentConfig& cfg) {
    WaveSolveOptions o;
    o.L = cfg.wave.L;
    o.n = cfg.wave.n;
    o.tol = cfg.wave.tol;
    o.seed = cfg.wave.seed;
    return o;
}

SeparatrixCurve separatrix_for(const ExperimentConfig& cfg, const Kinetics& kin) {
    SeparatrixOptions o;
    o.tol = cfg.separatrix.tol;
    const double u_hi = cfg.separatrix.u_hi > 0.0 ? cfg.separatrix.u_hi : 2.0 * kin.invariant_box().u;
    return compute_separatrix(kin, cfg.separatrix.u_lo, u_hi, o);
}

WaveBundle prepare_wave(const ExperimentConfig& cfg) { return prepare_wave(cfg, wave_options(cfg)); }

WaveBundle prepare_wave(const ExperimentConfig& cfg, const WaveSolveOptions& wave_opt) {
    Kinetics kin(cfg.kinetics);
    HFunction h(separatrix_for(cfg, kin));
    auto wave = std::make_shared<const WaveProfile>(solve_standing_wave(kin, h, wave_opt));
    return WaveBundle{std::move(kin), std::move(h), std::move(wave)};
}

GridSpec make_grid(const ExperimentConfig& cfg, double epsilon) {
    const auto& g = cfg.grid;
    const double dx = g.dx > 0.0 ? g.dx : g.dx_over_eps * epsilon;
    switch (g.geometry) {
        case Geometry::Line: return GridSpec::line(g.extent[0], g.extent[1], dx);
        case Geometry::Radial: return GridSpec::radial(g.dim, g.extent[0], dx);
        case Geometry::Rect2D: return GridSpec::rect(g.extent[0], g.extent[1], g.extent[2], g.extent[3], dx);
    }
    throw Error(ErrorKind::Config, "unknown grid geometry");
}

Coefficients make_coefficients(const ExperimentConfig& cfg, const GridSpec& grid) {
    auto k = std::make_shared<Expression>(cfg.coeff.k_expr);
    auto h = std::make_shared<Expression>(cfg.coeff.h_expr);
    const bool homogeneous = k->is_constant() && h->is_constant();
    return Coefficients::from_functions(
        grid, [k](Point2 x) { return (*k)(x.x, x.y); }, [h](Point2 x) { return (*h)(x.x, x.y); }, homogeneous);
}

Front initial_front(const ExperimentConfig& cfg) {
    const auto& in = cfg.interface;
    switch (in.shape) {
        case FrontShape::Point: {
            // Inside (p+) is the region left of the first crossing, alternating after it.
            return PointSetFront{in.points, true};
        }
        case FrontShape::Circle:
            if (cfg.grid.geometry == Geometry::Radial) return CircleFront{in.center, in.radius};
            return circle_polyline(in.center, in.radius, static_cast<std::size_t>(in.vertices));
        case FrontShape::Ellipse:
            return ellipse_polyline(in.center, in.semi_x, in.semi_y, static_cast<std::size_t>(in.vertices));
    }
    throw Error(ErrorKind::Config, "unknown interface shape");
}

DrivingConstant driving_constant(const ExperimentConfig& cfg) { return DrivingConstant{cfg.interface.C.value_or(0.0)}; }

namespace {

std::vector<Front> moving_points(const ExperimentConfig& cfg, const Coefficients& c, std::span<const double> times) {
    // A 1D front point has no curvature; it moves only under coefficient gradients.
    PointSetFront front{cfg.interface.points, true};
    std::vector<Front> out;
    if (c.homogeneous) {
        out.assign(times.size(), front);
        return out;
    }
    const DrivingConstant C = driving_constant(cfg);
    const double dt = cfg.interface.dt > 0.0 ? cfg.interface.dt : 1e-5;
    double t = 0.0;
    for (double target : times) {
        while (t < target - 1e-15) {
            const double h = std::min(dt, target - t);
            for (std::size_t i = 0; i < front.points.size(); ++i) {
                // Outward normal points from the p+ side to the p- side.
                const bool inside_left = (i % 2 == 0) == front.left_inside;
                const Point2 n{inside_left ? 1.0 : -1.0, 0.0};
                auto vel = [&](double x) { return n.x * normal_velocity(c, C, 1, 0.0, {x, 0.0}, n); };
                const double x = front.points[i];
                const double k1 = vel(x), k2 = vel(x + 0.5 * h * k1), k3 = vel(x + 0.5 * h * k2), k4 = vel(x + h * k3);
                front.points[i] = x + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
            }
            t += h;
        }
        out.push_back(front);
    }
    return out;
}

}  // namespace

std::vector<Front> limit_interface(const ExperimentConfig& cfg, const Coefficients& c, std::span<const double> times) {
    if (times.empty()) return {};
    const double t_max = *std::max_element(times.begin(), times.end());
    const auto& in = cfg.interface;
    std::vector<Front> out;
    if (cfg.grid.geometry == Geometry::Line) return moving_points(cfg, c, times);
    if (cfg.grid.geometry == Geometry::Radial || (in.shape == FrontShape::Circle && c.homogeneous)) {
        const int dim = cfg.grid.geometry == Geometry::Radial ? cfg.grid.dim : 2;
        const double dt = in.dt > 0.0 ? in.dt : std::min(1e-5, std::max(t_max, 1e-12) / 100.0);
        const RadialInterface r = evolve_radial(in.radius, c, driving_constant(cfg), dim, t_max, dt, in.center);
        for (double t : times) out.push_back(CircleFront{in.center, r.radius_at(t)});
        return out;
    }
    const auto poly = std::get<PolylineInterface>(initial_front(cfg));
    const double dt = in.dt > 0.0 ? in.dt : t_max;  // the CFL limit of the flow takes over
    for (auto& g : evolve_polyline(poly, c, driving_constant(cfg), times, std::max(dt, 1e-12))) out.push_back(std::move(g));
    return out;
}

ErrorReport run_epsilon(const ExperimentConfig& cfg, const WaveBundle& bundle, double epsilon, unsigned workers) {
    ErrorReport rep;
    rep.epsilon = epsilon;
    const GridSpec grid = make_grid(cfg, epsilon);
    rep.resolved = grid.dx <= epsilon / 8.0 * (1.0 + 1e-12);
    const Coefficients coeff = make_coefficients(cfg, grid);
    rep.T = cfg.solver.t_end;
    rep.t0 = window_start(epsilon, cfg.metrics.t0_factor);
    if (!(rep.t0 < rep.T)) {
        throw Error(ErrorKind::EmptyWindow, "measurement window [" + std::to_string(rep.t0) + ", " +
                                                std::to_string(rep.T) + "] is empty");
    }
    const InitialData data = build_initial_data(cfg.initial.kind, grid, initial_front(cfg), coeff, bundle.kin,
                                                *bundle.wave, bundle.h, epsilon, cfg.initial.width);

    const int P = cfg.metrics.probes;
    std::vector<double> probes;
    for (int i = 0; i <= P; ++i) probes.push_back(rep.t0 + (rep.T - rep.t0) * i / P);

    SolverConfig sc;
    sc.dt = cfg.solver.dt;
    sc.scheme = cfg.solver.scheme;
    sc.t_end = cfg.solver.t_end;
    sc.face_mean = cfg.solver.face_mean;
    sc.workers = workers;
    const RdSolver solver(grid, coeff, bundle.kin, sc);
    const std::vector<Field> snaps = solver.simulate(data.field, probes);

    std::vector<Front> fronts;
    std::vector<double> times;
    for (const auto& f : snaps) {
        fronts.push_back(extract_front(f, grid, bundle.h));
        times.push_back(f.t);
    }
    const std::vector<Front> limit = limit_interface(cfg, coeff, times);
    const AnsatzProfile ansatz{bundle.wave, [&coeff](Point2 x) { return coeff.K(x); }};

    const ProfileError e2 = profile_error_ii(snaps, grid, fronts, ansatz);
    const ShiftedError e3 = profile_error_iii(snaps, grid, fronts, limit, ansatz);
    rep.E_ii_u = e2.u;
    rep.E_ii_v = e2.v;
    rep.E_iii_u = e3.u;
    rep.E_iii_v = e3.v;
    rep.theta_sup = e3.theta_sup;
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        rep.dH_max = std::max(rep.dH_max, hausdorff_distance(fronts[i], limit[i]));
        const GraphOffset g = graph_over_gamma(fronts[i], limit[i], cfg.metrics.band);
        rep.eta_sup = std::max(rep.eta_sup, g.eta_sup);
        rep.grad_eta_sup = std::max(rep.grad_eta_sup, g.grad_eta_sup);
    }
    const SandwichConstants A = sandwich_fit(snaps, grid, limit, ansatz);
    rep.A1_fit = A.A1;
    rep.A2_fit = A.A2;
    rep.A3_fit = A.A3;
    rep.sandwich_violations = sandwich_check(snaps, grid, limit, ansatz, A).violations;
    rep.probes = snaps.size();
    return rep;
}

SweepResult convergence_sweep(const ExperimentConfig& cfg, const std::vector<double>& eps_list, unsigned workers) {
    for (std::size_t i = 1; i < eps_list.size(); ++i) {
        if (!(eps_list[i] < eps_list[i - 1])) throw Error(ErrorKind::Config, "eps_list must be strictly decreasing");
    }
    const WaveBundle bundle = prepare_wave(cfg);
    SweepResult res;
    res.reports.resize(eps_list.size());
    const unsigned outer = std::min<unsigned>(std::max(workers, 1u), static_cast<unsigned>(eps_list.size()));
    const unsigned inner = std::max(1u, workers / std::max(outer, 1u));
    auto run_one = [&](std::size_t i) {
        try {
            res.reports[i] = run_epsilon(cfg, bundle, eps_list[i], inner);
        } catch (const std::exception& e) {
            ErrorReport r;
            r.epsilon = eps_list[i];
            r.T = cfg.solver.t_end;
            r.t0 = window_start(eps_list[i], cfg.metrics.t0_factor);
            r.failure = e.what();
            res.reports[i] = r;
        }
    };
    if (outer > 1) {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < eps_list.size(); ++i) pool.emplace_back(run_one, i);
        for (auto& t : pool) t.join();
    } else {
        for (std::size_t i = 0; i < eps_list.size(); ++i) run_one(i);
    }
    std::vector<double> eps, dh;
    for (const auto& r : res.reports) {
        if (r.failure.empty() && r.resolved) {
            eps.push_back(r.epsilon);
            dh.push_back(r.dH_max);
        }
    }
    if (eps.size() >= 2) res.hausdorff_fit = fit_power_law(eps, dh);
    return res;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      static_cast<std::uint32_t>(stream)};
    std::uint32_t w[2];
    seq.generate(w, w + 2);
    return (static_cast<std::uint64_t>(w[0]) << 32) | w[1];
}

ComparisonPair nested_pair(const WaveBundle& bundle, std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double eps = 0.04 + 0.06 * unit(rng);
    ComparisonPair p;
    p.grid = GridSpec::line(-1.0, 1.0, eps / 8.0);
    const Coefficients c = Coefficients::uniform(p.grid);
    // The outer interval carries more of species u (p+ inside), so u1 >= u2 and v1 <= v2.
    const double l = -0.5 + 0.3 * unit(rng), r = 0.2 + 0.3 * unit(rng);
    const double shrink_l = 0.15 * unit(rng), shrink_r = 0.15 * unit(rng);
    const PointSetFront outer{{l, r}, false}, inner{{l + shrink_l, r - shrink_r}, false};
    p.first = build_initial_data(InitialKind::WellPrepared, p.grid, outer, c, bundle.kin, *bundle.wave, bundle.h, eps)
                  .field;
    p.second = build_initial_data(InitialKind::WellPrepared, p.grid, inner, c, bundle.kin, *bundle.wave, bundle.h, eps)
                   .field;
    return p;
}

LiouvilleRun liouville_suite(const ExperimentConfig& cfg, unsigned workers) {
    LiouvilleRun out;
    const auto& L = cfg.liouville;
    if (L.seeds == 0 && L.comparison_pairs == 0) return out;
    WaveSolveOptions wo = wave_options(cfg);
    wo.L = L.half_length;
    wo.n = L.n;
    const WaveBundle bundle = prepare_wave(cfg, wo);

    out.series.resize(static_cast<std::size_t>(L.seeds));
    out.failures.resize(static_cast<std::size_t>(L.seeds));
    LiouvilleOptions lo;
    lo.horizon = L.horizon;
    lo.probes = L.probes;
    parallel_for(out.series.size(), workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            SandwichSeed seed{L.a, L.b, BlendKind::RandomSmooth, derive_seed(cfg.seed, i, 1)};
            try {
                out.series[i] = liouville_convergence_test(bundle.kin, *bundle.wave, seed, lo);
            } catch (const std::exception& ex) {
                out.failures[i] = ex.what();
            }
        }
    });

    std::vector<double> violations(static_cast<std::size_t>(L.comparison_pairs), 0.0);
    parallel_for(violations.size(), workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            try {
                ComparisonPair p = nested_pair(bundle, derive_seed(cfg.seed, i, 2));
                SolverConfig sc;
                sc.t_end = L.comparison_t_end;
                const RdSolver solver(p.grid, Coefficients::uniform(p.grid), bundle.kin, sc);
                violations[i] = comparison_test(solver, p.first, p.second, L.comparison_t_end).max_violation;
            } catch (const std::exception&) {
                violations[i] = std::numeric_limits<double>::infinity();
            }
        }
    });
    out.comparison_pairs = violations.size();
    for (double v : violations) out.comparison_max_violation = std::max(out.comparison_max_violation, v);
    return out;
}

}  // namespace lvfront
