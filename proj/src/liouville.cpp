#include "lvfront/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "lvfront/error.hpp"

namespace lvfront {

double order_violation(const Field& first, const Field& second) {
    double worst = 0.0;
    for (std::size_t i = 0; i < first.u.size(); ++i) {
        worst = std::max({worst, second.u[i] - first.u[i], first.v[i] - second.v[i]});
    }
    return worst;
}

ComparisonResult comparison_test(const RdSolver& solver, Field first, Field second, double t_end) {
    ComparisonResult res;
    res.max_violation = order_violation(first, second);
    const double dt = std::min(solver.time_step(first.epsilon), solver.time_step(second.epsilon));
    const std::size_t steps = t_end > first.t ? static_cast<std::size_t>(std::ceil((t_end - first.t) / dt - 1e-9)) : 0;
    const double h = steps ? (t_end - first.t) / static_cast<double>(steps) : 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
        solver.step(first, h);
        solver.step(second, h);
        res.max_violation = std::max(res.max_violation, order_violation(first, second));
    }
    res.steps = steps;
    return res;
}

Field sandwich_initial_data(const WaveProfile& wave, const SandwichSeed& seed) {
    if (!(seed.a <= seed.b)) throw Error(ErrorKind::InvalidParams, "sandwich seed needs a <= b");
    const auto& z = wave.z();
    const std::size_t n = z.size();
    std::vector<double> wu(n), wv(n);  // weight of the a-translate
    if (seed.blend == BlendKind::RandomSmooth) {
        std::mt19937_64 rng(seed.rng_seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
        const double span = z.back() - z.front();
        auto random_weight = [&](std::vector<double>& w) {
            constexpr int modes = 6;
            double amp[modes], ph[modes];
            for (int m = 0; m < modes; ++m) {
                amp[m] = 2.0 * gauss(rng) / (1.0 + m);
                ph[m] = phase(rng);
            }
            const double offset = gauss(rng);
            for (std::size_t i = 0; i < n; ++i) {
                double s = offset;
                for (int m = 0; m < modes; ++m) s += amp[m] * std::sin(2.0 * std::numbers::pi * (m + 1) * z[i] / span + ph[m]);
                w[i] = 1.0 / (1.0 + std::exp(-s));
            }
        };
        random_weight(wu);
        random_weight(wv);
    }
    Field f;
    f.epsilon = 1.0;
    f.u.resize(n);
    f.v.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const PhasePoint pa = wave.evaluate(z[i] - seed.a), pb = wave.evaluate(z[i] - seed.b);
        switch (seed.blend) {
            case BlendKind::UpperEnvelope:
                f.u[i] = std::max(pa.u, pb.u);
                f.v[i] = std::max(pa.v, pb.v);
                break;
            case BlendKind::LowerEnvelope:
                f.u[i] = std::min(pa.u, pb.u);
                f.v[i] = std::min(pa.v, pb.v);
                break;
            case BlendKind::RandomSmooth:
                f.u[i] = wu[i] * pa.u + (1.0 - wu[i]) * pb.u;
                f.v[i] = wv[i] * pa.v + (1.0 - wv[i]) * pb.v;
                break;
        }
    }
    f.u.front() = wave.phi().front();
    f.v.front() = wave.psi().front();
    f.u.back() = wave.phi().back();
    f.v.back() = wave.psi().back();
    return f;
}

TranslateFit fit_translate(const WaveProfile& wave, const std::vector<double>& u, const std::vector<double>& v,
                           double lo, double hi, double tol) {
    const auto& z = wave.z();
    auto cost = [&](double theta) {
        double worst = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
            const PhasePoint w = wave.evaluate(z[i] - theta);
            worst = std::max({worst, std::abs(u[i] - w.u), std::abs(v[i] - w.v)});
        }
        return worst;
    };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = cost(c), fd = cost(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = cost(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = cost(d);
        }
    }
    TranslateFit fit;
    fit.theta = 0.5 * (a + b);
    fit.residual = cost(fit.theta);
    if (fit.theta - lo < 2.0 * tol || hi - fit.theta < 2.0 * tol) {
        throw Error(ErrorKind::FitOutOfBracket, "best translate lies on the edge of the search window");
    }
    return fit;
}

std::vector<TranslateFit> liouville_convergence_test(const Kinetics& kin, const WaveProfile& wave,
                                                     const SandwichSeed& seed, const LiouvilleOptions& opt) {
    const auto& p = kin.params();
    Field f = sandwich_initial_data(wave, seed);
    const std::size_t n = f.u.size();
    const double dz = wave.dz();
    const double inv_dz2 = 1.0 / (dz * dz);
    const double dt_max = 1.0 / (2.0 * std::max(p.D1, p.D2) * inv_dz2 + kin.jacobian_bound());
    const int probes = std::max(opt.probes, 1);
    const double lo = seed.a - 1.0, hi = seed.b + 1.0;

    std::vector<TranslateFit> out;
    auto record = [&](double t) {
        TranslateFit fit = fit_translate(wave, f.u, f.v, lo, hi, opt.theta_tol);
        fit.t = t;
        out.push_back(fit);
    };
    record(0.0);
    std::vector<double> un(n), vn(n);
    const double interval = opt.horizon / probes;
    const std::size_t steps = static_cast<std::size_t>(std::ceil(interval / dt_max - 1e-9));
    const double dt = interval / static_cast<double>(steps);
    for (int k = 1; k <= probes; ++k) {
        for (std::size_t s = 0; s < steps; ++s) {
            un.front() = f.u.front();
            vn.front() = f.v.front();
            un.back() = f.u.back();
            vn.back() = f.v.back();
            for (std::size_t i = 1; i + 1 < n; ++i) {
                const double uc = f.u[i], vc = f.v[i];
                un[i] = uc + dt * (p.D1 * (f.u[i - 1] - 2.0 * uc + f.u[i + 1]) * inv_dz2 + kin.f(uc, vc));
                vn[i] = vc + dt * (p.D2 * (f.v[i - 1] - 2.0 * vc + f.v[i + 1]) * inv_dz2 + kin.g(uc, vc));
            }
            f.u.swap(un);
            f.v.swap(vn);
        }
        record(interval * k);
    }
    return out;
}

bool cooperation_transform_check(const ReactionFn& reaction, PhasePoint box, int samples) {
    // Transformed state (w1, w2) = (u, -v): F1 = f(w1, -w2), F2 = -g(w1, -w2).
    auto transformed = [&](double w1, double w2) {
        const auto [f, g] = reaction(w1, -w2);
        return std::pair<double, double>{f, -g};
    };
    const double h = 1e-6 * std::max({1.0, box.u, box.v});
    for (int i = 0; i < samples; ++i) {
        for (int j = 0; j < samples; ++j) {
            const double u = box.u * i / (samples - 1), v = box.v * j / (samples - 1);
            const double w1 = u, w2 = -v;
            const double dF1_dw2 = (transformed(w1, w2 + h).first - transformed(w1, w2 - h).first) / (2 * h);
            const double dF2_dw1 = (transformed(w1 + h, w2).second - transformed(w1 - h, w2).second) / (2 * h);
            if (dF1_dw2 < -1e-9 || dF2_dw1 < -1e-9) return false;
        }
    }
    return true;
}

bool cooperation_transform_check(const Kinetics& kin) {
    return cooperation_transform_check(
        [&kin](double u, double v) { return std::pair<double, double>{kin.f(u, v), kin.g(u, v)}; },
        kin.invariant_box());
}

}  // namespace lvfront
