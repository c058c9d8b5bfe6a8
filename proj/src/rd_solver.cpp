#include "lvfront/rd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lvfront/error.hpp"
#include "lvfront/parallel.hpp"

namespace lvfront {
namespace {

double face_mean(double a, double b, FaceMean mean) {
    return mean == FaceMean::Arithmetic ? 0.5 * (a + b) : 2.0 * a * b / (a + b);
}

std::size_t steps_for(double span, double dt) {
    if (span <= 0.0) return 0;
    return static_cast<std::size_t>(std::ceil(span / dt - 1e-9));
}

}  // namespace

double stable_dt(const GridSpec& grid, const Coefficients& c, const Kinetics& kin, double epsilon,
                 Scheme scheme) {
    const auto& p = kin.params();
    const double reaction_rate = c.h_max() * kin.jacobian_bound() / (epsilon * epsilon);
    const double reaction_dt = 0.2 / reaction_rate;
    if (scheme == Scheme::IMEX) return reaction_dt;
    const double h_min = grid.geometry == Geometry::Rect2D ? std::min(grid.dx, grid.dy) : grid.dx;
    const double diffusion_rate = 2.0 * grid.stencil_dim() * std::max(p.D1, p.D2) * c.k_max() / (h_min * h_min);
    return std::min(1.0 / (diffusion_rate + reaction_rate), reaction_dt);
}

RdSolver::RdSolver(GridSpec grid, Coefficients coeff, Kinetics kin, SolverConfig cfg)
    : grid_(std::move(grid)), coeff_(std::move(coeff)), kin_(std::move(kin)), cfg_(cfg) {
    const std::size_t n = grid_.size();
    if (coeff_.k_nodes.size() != n || coeff_.h_nodes.size() != n) {
        throw Error(ErrorKind::InvalidParams, "coefficients were sampled on a different grid");
    }
    volumes_ = grid_.cell_volumes();
    w_xm_.assign(n, 0.0);
    w_xp_.assign(n, 0.0);
    w_ym_.assign(n, 0.0);
    w_yp_.assign(n, 0.0);
    const auto& k = coeff_.k_nodes;
    const std::size_t nx = grid_.nx, ny = grid_.ny;
    const double dx = grid_.dx;

    if (grid_.geometry == Geometry::Rect2D) {
        const double dy = grid_.dy;
        for (std::size_t j = 0; j < ny; ++j) {
            const double wy = (j == 0 || j + 1 == ny) ? 0.5 * dy : dy;
            for (std::size_t i = 0; i < nx; ++i) {
                const double wx = (i == 0 || i + 1 == nx) ? 0.5 * dx : dx;
                const std::size_t id = j * nx + i;
                if (i > 0) w_xm_[id] = face_mean(k[id], k[id - 1], cfg_.face_mean) / (dx * wx);
                if (i + 1 < nx) w_xp_[id] = face_mean(k[id], k[id + 1], cfg_.face_mean) / (dx * wx);
                if (j > 0) w_ym_[id] = face_mean(k[id], k[id - nx], cfg_.face_mean) / (dy * wy);
                if (j + 1 < ny) w_yp_[id] = face_mean(k[id], k[id + nx], cfg_.face_mean) / (dy * wy);
            }
        }
        return;
    }
    const bool radial = grid_.geometry == Geometry::Radial;
    const double power = radial ? grid_.radial_dim - 1 : 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
        const double r = dx * static_cast<double>(i);
        // Face area per unit solid angle (1 on a line).
        auto area = [&](double rf) { return radial ? std::pow(rf, power) : 1.0; };
        if (i > 0) w_xm_[i] = area(r - 0.5 * dx) * face_mean(k[i], k[i - 1], cfg_.face_mean) / (dx * volumes_[i]);
        if (i + 1 < nx) w_xp_[i] = area(r + 0.5 * dx) * face_mean(k[i], k[i + 1], cfg_.face_mean) / (dx * volumes_[i]);
    }
}

double RdSolver::time_step(double epsilon) const {
    return cfg_.dt > 0.0 ? cfg_.dt : stable_dt(grid_, coeff_, kin_, epsilon, cfg_.scheme);
}

void RdSolver::apply_operator(std::span<const double> in, std::span<double> out) const {
    const std::size_t n = grid_.size(), nx = grid_.nx;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = in[i];
        double s = 0.0;
        if (w_xm_[i] != 0.0) s += w_xm_[i] * (in[i - 1] - c);
        if (w_xp_[i] != 0.0) s += w_xp_[i] * (in[i + 1] - c);
        if (w_ym_[i] != 0.0) s += w_ym_[i] * (in[i - nx] - c);
        if (w_yp_[i] != 0.0) s += w_yp_[i] * (in[i + nx] - c);
        out[i] = s;
    }
}

double RdSolver::integrate(std::span<const double> values) const {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += volumes_[i] * values[i];
    return s;
}

void RdSolver::explicit_step(Field& f, double dt) const {
    const auto& p = kin_.params();
    const std::size_t n = grid_.size(), nx = grid_.nx;
    const double react = cfg_.reaction ? dt / (f.epsilon * f.epsilon) : 0.0;
    std::vector<double> un(n), vn(n);
    const auto& u = f.u;
    const auto& v = f.v;
    parallel_for(n, cfg_.workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const double uc = u[i], vc = v[i];
            double lu = 0.0, lv = 0.0;
            if (w_xm_[i] != 0.0) { lu += w_xm_[i] * (u[i - 1] - uc); lv += w_xm_[i] * (v[i - 1] - vc); }
            if (w_xp_[i] != 0.0) { lu += w_xp_[i] * (u[i + 1] - uc); lv += w_xp_[i] * (v[i + 1] - vc); }
            if (w_ym_[i] != 0.0) { lu += w_ym_[i] * (u[i - nx] - uc); lv += w_ym_[i] * (v[i - nx] - vc); }
            if (w_yp_[i] != 0.0) { lu += w_yp_[i] * (u[i + nx] - uc); lv += w_yp_[i] * (v[i + nx] - vc); }
            const double hr = react * coeff_.h_nodes[i];
            un[i] = uc + dt * p.D1 * lu + hr * kin_.f(uc, vc);
            vn[i] = vc + dt * p.D2 * lv + hr * kin_.g(uc, vc);
        }
    });
    f.u.swap(un);
    f.v.swap(vn);
}

void RdSolver::implicit_sweep(std::vector<double>& x, double coef, bool along_y) const {
    // Solves (I - coef L_dir) y = x line by line with the Thomas algorithm.
    const std::size_t nx = grid_.nx, ny = grid_.ny;
    const std::size_t lines = along_y ? nx : ny;
    const std::size_t len = along_y ? ny : nx;
    const std::size_t stride = along_y ? nx : 1;
    const auto& wm = along_y ? w_ym_ : w_xm_;
    const auto& wp = along_y ? w_yp_ : w_xp_;
    parallel_for(lines, cfg_.workers, [&](std::size_t b, std::size_t e) {
        std::vector<double> cp(len), dp(len);
        for (std::size_t line = b; line < e; ++line) {
            const std::size_t base = along_y ? line : line * nx;
            for (std::size_t m = 0; m < len; ++m) {
                const std::size_t id = base + m * stride;
                const double a = -coef * wm[id], c = -coef * wp[id];
                const double bb = 1.0 + coef * (wm[id] + wp[id]);
                const double denom = m == 0 ? bb : bb - a * cp[m - 1];
                cp[m] = c / denom;
                dp[m] = (x[id] - (m == 0 ? 0.0 : a * dp[m - 1])) / denom;
            }
            for (std::size_t m = len; m-- > 0;) {
                const std::size_t id = base + m * stride;
                x[id] = dp[m] - (m + 1 < len ? cp[m] * x[id + stride] : 0.0);
            }
        }
    });
}

void RdSolver::imex_step(Field& f, double dt) const {
    const auto& p = kin_.params();
    const std::size_t n = grid_.size();
    if (cfg_.reaction) {
        const double react = dt / (f.epsilon * f.epsilon);
        for (std::size_t i = 0; i < n; ++i) {
            const double uc = f.u[i], vc = f.v[i];
            const double hr = react * coeff_.h_nodes[i];
            f.u[i] = uc + hr * kin_.f(uc, vc);
            f.v[i] = vc + hr * kin_.g(uc, vc);
        }
    }
    implicit_sweep(f.u, dt * p.D1, false);
    implicit_sweep(f.v, dt * p.D2, false);
    if (grid_.geometry == Geometry::Rect2D) {
        implicit_sweep(f.u, dt * p.D1, true);
        implicit_sweep(f.v, dt * p.D2, true);
    }
}

void RdSolver::check(const Field& f) const {
    const PhasePoint top = kin_.invariant_box();
    const double u_hi = top.u * (1.0 + cfg_.box_margin) + 1e-9;
    const double v_hi = top.v * (1.0 + cfg_.box_margin) + 1e-9;
    for (std::size_t i = 0; i < f.u.size(); ++i) {
        const double u = f.u[i], v = f.v[i];
        if (!std::isfinite(u) || !std::isfinite(v) || u < -1e-9 || v < -1e-9 || u > u_hi || v > v_hi) {
            std::ostringstream os;
            os << "state (" << u << ", " << v << ") at node " << i << ", t = " << f.t
               << " left the invariant box; reduce dt";
            throw Error(ErrorKind::StabilityViolation, os.str());
        }
    }
}

void RdSolver::step(Field& f, double dt) const {
    if (f.u.size() != grid_.size() || f.v.size() != grid_.size()) {
        throw Error(ErrorKind::InvalidParams, "field does not match the grid");
    }
    if (cfg_.scheme == Scheme::ExplicitEuler) {
        explicit_step(f, dt);
    } else {
        imex_step(f, dt);
    }
    f.t += dt;
    check(f);
}

void RdSolver::step(Field& f) const { step(f, time_step(f.epsilon)); }

void RdSolver::run(Field& f, double t_end, const std::function<void(const Field&)>& on_step) const {
    const double t0 = f.t;
    const std::size_t steps = steps_for(t_end - t0, time_step(f.epsilon));
    if (steps == 0) return;
    const double dt = (t_end - t0) / static_cast<double>(steps);
    for (std::size_t s = 1; s <= steps; ++s) {
        step(f, dt);
        if (s == steps) f.t = t_end;
        if (on_step) on_step(f);
    }
}

std::vector<Field> RdSolver::simulate(Field f0, std::span<const double> probes) const {
    const double t0 = f0.t;
    for (std::size_t k = 0; k < probes.size(); ++k) {
        if (probes[k] < t0 - 1e-12 || probes[k] > cfg_.t_end + 1e-12 || (k > 0 && probes[k] < probes[k - 1])) {
            throw Error(ErrorKind::InvalidParams, "probe times must be non-decreasing within [t0, t_end]");
        }
    }
    const std::size_t steps = steps_for(cfg_.t_end - t0, time_step(f0.epsilon));
    const double dt = steps ? (cfg_.t_end - t0) / static_cast<double>(steps) : 0.0;
    std::vector<std::size_t> at(probes.size());
    for (std::size_t k = 0; k < probes.size(); ++k) {
        at[k] = steps ? static_cast<std::size_t>(std::llround((probes[k] - t0) / dt)) : 0;
    }
    std::vector<Field> out;
    out.reserve(probes.size());
    std::size_t next = 0;
    Field f = std::move(f0);
    for (std::size_t s = 0;; ++s) {
        while (next < at.size() && at[next] == s) {
            out.push_back(f);
            ++next;
        }
        if (s >= steps || next == at.size()) break;
        step(f, dt);
        if (s + 1 == steps) f.t = cfg_.t_end;
    }
    return out;
}

Field step(const Field& f, const GridSpec& grid, const Coefficients& c, const Kinetics& kin,
           const SolverConfig& cfg) {
    Field out = f;
    RdSolver(grid, c, kin, cfg).step(out);
    return out;
}

std::vector<Field> simulate(const Field& f0, const GridSpec& grid, const Coefficients& c, const Kinetics& kin,
                            const SolverConfig& cfg, std::span<const double> probes) {
    return RdSolver(grid, c, kin, cfg).simulate(f0, probes);
}

double front_boundary_clearance(const GridSpec& grid, const Front& front) {
    const double inf = std::numeric_limits<double>::infinity();
    auto box_clearance = [&](Point2 p) {
        double c = std::min(p.x - grid.x0, grid.x1 - p.x);
        if (grid.geometry == Geometry::Rect2D) c = std::min({c, p.y - grid.y0, grid.y1 - p.y});
        return c;
    };
    if (const auto* pts = std::get_if<PointSetFront>(&front)) {
        double c = inf;
        for (double x : pts->points) c = std::min(c, box_clearance({x, 0.0}));
        return c;
    }
    if (const auto* circ = std::get_if<CircleFront>(&front)) {
        if (grid.geometry == Geometry::Radial) return grid.x1 - circ->R;
        double c = box_clearance(circ->center) - circ->R;
        return c;
    }
    const auto& poly = std::get<PolylineInterface>(front);
    double c = inf;
    for (const auto& v : poly.vertices) c = std::min(c, box_clearance(v));
    return c;
}

InitialData build_initial_data(InitialKind kind, const GridSpec& grid, const Front& gamma0,
                               const Coefficients& c, const Kinetics& kin, const WaveProfile& wave,
                               const HFunction& h, double epsilon, double width) {
    if (!(epsilon > 0.0)) throw Error(ErrorKind::InvalidParams, "epsilon must be positive");
    if (front_boundary_clearance(grid, gamma0) < 4.0 * epsilon) {
        throw Error(ErrorKind::FrontTooClose, "initial front lies within 4 eps of the boundary");
    }
    const PhasePoint pp = kin.equilibria().p_plus, pm = kin.equilibria().p_minus;

    // Blend weight on the segment p+ -> p- at which H vanishes.
    double lo = 0.0, hi = 1.0;
    auto blend = [&](double w) { return PhasePoint{(1 - w) * pp.u + w * pm.u, (1 - w) * pp.v + w * pm.v}; };
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (h(blend(mid)) <= 0.0 ? lo : hi) = mid;
    }
    const double s_star = 0.5 * (lo + hi);

    InitialData out;
    Field& f = out.field;
    f.epsilon = epsilon;
    f.t = 0.0;
    f.u.resize(grid.size());
    f.v.resize(grid.size());
    double a0 = std::numeric_limits<double>::infinity(), a0_layer = a0;
    const double layer = kind == InitialKind::SteppedSmooth ? 0.5 * width : epsilon;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point2 x = grid.point(i);
        const double d0 = signed_distance(gamma0, x);
        PhasePoint s;
        if (kind == InitialKind::WellPrepared) {
            s = wave.evaluate(c.K(x) * d0 / epsilon);
        } else {
            const double t = std::clamp(d0 / width + 0.5, 0.0, 1.0);
            const double smooth = t * t * (3.0 - 2.0 * t);
            const double w = d0 <= 0.0 ? s_star * 2.0 * smooth : s_star + (1.0 - s_star) * (2.0 * smooth - 1.0);
            s = blend(w);
        }
        f.u[i] = s.u;
        f.v[i] = s.v;
        if (std::abs(d0) > 1e-12) {
            const double ratio = dist_to_separatrix(h, s) / std::abs(d0);
            a0 = std::min(a0, ratio);
            if (std::abs(d0) <= layer) a0_layer = std::min(a0_layer, ratio);
        }
    }
    out.A0 = a0;
    out.A0_layer = a0_layer;
    return out;
}

}  // namespace lvfront
