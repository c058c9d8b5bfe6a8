#include "lvfront/traveling_wave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lvfront/error.hpp"

namespace lvfront {
namespace {

struct V2 {
    double a = 0.0, b = 0.0;
};

Mat2 mul(const Mat2& x, const Mat2& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
}
V2 mul(const Mat2& x, V2 y) { return {x.a11 * y.a + x.a12 * y.b, x.a21 * y.a + x.a22 * y.b}; }
Mat2 sub(const Mat2& x, const Mat2& y) {
    return {x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22};
}
Mat2 inverse(const Mat2& x) {
    const double d = x.det();
    if (d == 0.0 || !std::isfinite(d)) throw Error(ErrorKind::NewtonStall, "singular Jacobian block");
    return {x.a22 / d, -x.a12 / d, -x.a21 / d, x.a11 / d};
}

// Solves the block-tridiagonal system lower[k] x[k-1] + diag[k] x[k] + upper[k] x[k+1] = rhs[k].
std::vector<V2> solve_block_tridiagonal(const std::vector<Mat2>& lower, const std::vector<Mat2>& diag,
                                        const std::vector<Mat2>& upper, std::vector<V2> rhs) {
    const std::size_t n = diag.size();
    std::vector<Mat2> c_prime(n);
    Mat2 inv = inverse(diag[0]);
    c_prime[0] = mul(inv, upper[0]);
    rhs[0] = mul(inv, rhs[0]);
    for (std::size_t k = 1; k < n; ++k) {
        inv = inverse(sub(diag[k], mul(lower[k], c_prime[k - 1])));
        c_prime[k] = mul(inv, upper[k]);
        const V2 l = mul(lower[k], rhs[k - 1]);
        rhs[k] = mul(inv, V2{rhs[k].a - l.a, rhs[k].b - l.b});
    }
    for (std::size_t k = n - 1; k-- > 0;) {
        const V2 c = mul(c_prime[k], rhs[k + 1]);
        rhs[k] = {rhs[k].a - c.a, rhs[k].b - c.b};
    }
    return rhs;
}

struct NewtonSystem {
    const Kinetics& kin;
    const HFunction& h;
    double dz;
    std::size_t centre;

    // Residual of the pinned system at interior nodes 1..n-1 (index k = i - 1).
    std::vector<V2> residual(const std::vector<double>& U, const std::vector<double>& V) const {
        const auto& p = kin.params();
        const double inv_dz2 = 1.0 / (dz * dz);
        std::vector<V2> r(U.size() - 2);
        for (std::size_t i = 1; i + 1 < U.size(); ++i) {
            r[i - 1] = {p.D1 * (U[i - 1] - 2.0 * U[i] + U[i + 1]) * inv_dz2 + kin.f(U[i], V[i]),
                        p.D2 * (V[i - 1] - 2.0 * V[i] + V[i + 1]) * inv_dz2 + kin.g(U[i], V[i])};
        }
        r[centre - 1].a = inv_dz2 * h({U[centre], V[centre]});
        return r;
    }

    std::vector<V2> newton_step(const std::vector<double>& U, const std::vector<double>& V,
                                const std::vector<V2>& r) const {
        const auto& p = kin.params();
        const double inv_dz2 = 1.0 / (dz * dz);
        const std::size_t m = U.size() - 2;
        const Mat2 off{p.D1 * inv_dz2, 0.0, 0.0, p.D2 * inv_dz2};
        std::vector<Mat2> lower(m, off), upper(m, off), diag(m);
        std::vector<V2> rhs(m);
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t i = k + 1;
            Mat2 j = kin.jacobian({U[i], V[i]});
            j.a11 -= 2.0 * p.D1 * inv_dz2;
            j.a22 -= 2.0 * p.D2 * inv_dz2;
            diag[k] = j;
            rhs[k] = {-r[k].a, -r[k].b};
        }
        lower[0] = Mat2{};
        upper[m - 1] = Mat2{};
        const std::size_t kc = centre - 1;
        const PhasePoint grad = h.gradient({U[centre], V[centre]});
        diag[kc].a11 = inv_dz2 * grad.u;
        diag[kc].a12 = inv_dz2 * grad.v;
        lower[kc].a11 = lower[kc].a12 = 0.0;
        upper[kc].a11 = upper[kc].a12 = 0.0;
        return solve_block_tridiagonal(lower, diag, upper, std::move(rhs));
    }
};

double sup_norm(const std::vector<V2>& r) {
    double s = 0.0;
    for (const auto& x : r) s = std::max({s, std::abs(x.a), std::abs(x.b)});
    return s;
}

double l2_norm(const std::vector<V2>& r) {
    double s = 0.0;
    for (const auto& x : r) s += x.a * x.a + x.b * x.b;
    return std::sqrt(s);
}

}  // namespace

WaveProfile::WaveProfile(std::vector<double> z, std::vector<double> phi, std::vector<double> psi,
                         PhasePoint p_plus, PhasePoint p_minus)
    : z_(std::move(z)), phi_(std::move(phi)), psi_(std::move(psi)), p_plus_(p_plus), p_minus_(p_minus),
      phi_interp_(z_, phi_), psi_interp_(z_, psi_) {}

PhasePoint WaveProfile::evaluate(double z) const {
    if (z <= z_.front()) return p_plus_;
    if (z >= z_.back()) return p_minus_;
    return {phi_interp_(z), psi_interp_(z)};
}

PhasePoint WaveProfile::slope(double z) const {
    if (z <= z_.front() || z >= z_.back()) return {0.0, 0.0};
    return {phi_interp_.derivative(z), psi_interp_.derivative(z)};
}

double stationary_residual(const Kinetics& kin, const WaveProfile& w) {
    const auto& p = kin.params();
    const auto& U = w.phi();
    const auto& V = w.psi();
    const double inv_dz2 = 1.0 / (w.dz() * w.dz());
    double r = 0.0;
    for (std::size_t i = 1; i + 1 < U.size(); ++i) {
        r = std::max(r, std::abs(p.D1 * (U[i - 1] - 2.0 * U[i] + U[i + 1]) * inv_dz2 + kin.f(U[i], V[i])));
        r = std::max(r, std::abs(p.D2 * (V[i - 1] - 2.0 * V[i] + V[i + 1]) * inv_dz2 + kin.g(U[i], V[i])));
    }
    return r;
}

WaveProfile solve_standing_wave(const Kinetics& kin, const HFunction& h, const WaveSolveOptions& opt) {
    if (opt.n < 400 || opt.n % 2 != 0) {
        throw Error(ErrorKind::InvalidParams, "wave grid needs an even interval count n >= 400");
    }
    const auto& eq = kin.equilibria();
    const auto& p = kin.params();
    // Slowest tail decay rate over both ends.
    double rate = std::numeric_limits<double>::infinity();
    for (PhasePoint end : {eq.p_plus, eq.p_minus}) {
        for (auto lam : kin.jacobian(end).eigenvalues()) rate = std::min(rate, -lam.real());
    }
    if (std::exp(-std::sqrt(rate / std::max(p.D1, p.D2)) * opt.L) >= opt.tol) {
        throw Error(ErrorKind::InvalidParams, "truncation half-length L too short for the requested tol");
    }

    const std::size_t nodes = static_cast<std::size_t>(opt.n) + 1;
    const double dz = 2.0 * opt.L / opt.n;
    std::vector<double> z(nodes), U(nodes), V(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        z[i] = -opt.L + dz * static_cast<double>(i);
        double w;  // weight of p- in the seed
        if (opt.seed == WaveSeed::Tanh) {
            w = 0.5 * (1.0 + std::tanh(z[i]));
        } else {
            w = std::clamp((z[i] + 2.0) / 4.0, 0.0, 1.0);
        }
        U[i] = (1.0 - w) * eq.p_plus.u + w * eq.p_minus.u;
        V[i] = (1.0 - w) * eq.p_plus.v + w * eq.p_minus.v;
    }
    U.front() = eq.p_plus.u;
    V.front() = eq.p_plus.v;
    U.back() = eq.p_minus.u;
    V.back() = eq.p_minus.v;

    const NewtonSystem sys{kin, h, dz, nodes / 2};
    auto r = sys.residual(U, V);
    double merit = l2_norm(r);
    int it = 0;
    for (; it < opt.max_iterations && sup_norm(r) > 1e-2 * opt.tol; ++it) {
        const auto step = sys.newton_step(U, V, r);
        double alpha = 1.0;
        bool accepted = false;
        std::vector<double> U_try(U), V_try(V);
        for (int bt = 0; bt <= opt.max_backtracks; ++bt, alpha *= 0.5) {
            for (std::size_t i = 1; i + 1 < nodes; ++i) {
                U_try[i] = U[i] + alpha * step[i - 1].a;
                V_try[i] = V[i] + alpha * step[i - 1].b;
            }
            auto r_try = sys.residual(U_try, V_try);
            const double m_try = l2_norm(r_try);
            if (m_try <= (1.0 - 1e-4 * alpha) * merit) {
                U.swap(U_try);
                V.swap(V_try);
                r = std::move(r_try);
                merit = m_try;
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // At round-off level the merit can no longer decrease; accept that state.
            if (sup_norm(r) < opt.tol) break;
            throw Error(ErrorKind::NewtonStall,
                        "residual failed to decrease over the damped steps; try a larger L or another seed");
        }
    }

    WaveProfile wave(z, U, V, eq.p_plus, eq.p_minus);
    wave.newton_iterations = it;
    wave.residual = stationary_residual(kin, wave);
    if (!(wave.residual < opt.tol)) {
        std::ostringstream os;
        os << "stationary residual " << wave.residual << " above tol " << opt.tol
           << " (no standing wave for these parameters?)";
        throw Error(ErrorKind::NewtonStall, os.str());
    }
    for (std::size_t i = 1; i < nodes; ++i) {
        if (U[i] > U[i - 1] + 1e-12 || V[i] < V[i - 1] - 1e-12) {
            throw Error(ErrorKind::MonotonicityViolation, "converged profile is not monotone");
        }
    }

    // Locate the H = 0 crossing on the interpolant by bisection around the centre.
    auto H = [&](double s) { return h(wave.evaluate(s)); };
    double lo = z[nodes / 2 - 1], hi = z[nodes / 2 + 1];
    if (H(lo) > 0.0 || H(hi) < 0.0) {
        throw Error(ErrorKind::MonotonicityViolation, "H does not change sign at the pinned node");
    }
    for (int k = 0; k < 200 && hi - lo > 1e-15; ++k) {
        const double mid = 0.5 * (lo + hi);
        (H(mid) <= 0.0 ? lo : hi) = mid;
    }
    wave.phase_shift = 0.5 * (lo + hi);
    return wave;
}

SpeedEstimate estimate_wave_speed(const Kinetics& kin, const HFunction& h, double horizon,
                                  const WaveProfile* initial, const SpeedOptions& opt) {
    if (!(horizon > 0.0)) throw Error(ErrorKind::InvalidParams, "horizon must be positive");
    const auto& p = kin.params();
    const auto& eq = kin.equilibria();
    const std::size_t nodes = static_cast<std::size_t>(std::llround(2.0 * opt.half_length / opt.dz)) + 1;
    const double dz = 2.0 * opt.half_length / static_cast<double>(nodes - 1);
    std::vector<double> z(nodes), u(nodes), v(nodes), un(nodes), vn(nodes);
    for (std::size_t j = 0; j < nodes; ++j) {
        z[j] = -opt.half_length + dz * static_cast<double>(j);
        if (initial) {
            const PhasePoint s = initial->evaluate(z[j]);
            u[j] = s.u;
            v[j] = s.v;
        } else {
            const double w = 0.5 * (1.0 + std::tanh(z[j]));
            u[j] = (1.0 - w) * eq.p_plus.u + w * eq.p_minus.u;
            v[j] = (1.0 - w) * eq.p_plus.v + w * eq.p_minus.v;
        }
    }
    const double inv_dz2 = 1.0 / (dz * dz);
    const double dt_max = 0.9 / (2.0 * std::max(p.D1, p.D2) * inv_dz2 + kin.jacobian_bound());
    const long steps = static_cast<long>(std::ceil(horizon / dt_max));
    const double dt = horizon / static_cast<double>(steps);

    auto crossing = [&]() -> double {
        double hp = h({u[0], v[0]});
        for (std::size_t j = 1; j < nodes; ++j) {
            const double hc = h({u[j], v[j]});
            if ((hp < 0.0) != (hc < 0.0)) return z[j - 1] + dz * hp / (hp - hc);
            hp = hc;
        }
        throw Error(ErrorKind::NoFront, "no H = 0 crossing in the speed run");
    };

    SpeedEstimate est;
    const int samples = std::max(opt.samples, 4);
    long next_sample = 0;
    int sample_index = 0;
    for (long s = 0; s <= steps; ++s) {
        if (s == next_sample) {
            est.t.push_back(dt * static_cast<double>(s));
            est.crossing.push_back(crossing());
            ++sample_index;
            next_sample = static_cast<long>(std::llround(static_cast<double>(steps) * sample_index / samples));
        }
        if (s == steps) break;
        for (std::size_t j = 0; j < nodes; ++j) {
            const std::size_t jl = j == 0 ? 1 : j - 1;
            const std::size_t jr = j + 1 == nodes ? nodes - 2 : j + 1;
            un[j] = u[j] + dt * (p.D1 * (u[jl] - 2.0 * u[j] + u[jr]) * inv_dz2 + kin.f(u[j], v[j]));
            vn[j] = v[j] + dt * (p.D2 * (v[jl] - 2.0 * v[j] + v[jr]) * inv_dz2 + kin.g(u[j], v[j]));
        }
        u.swap(un);
        v.swap(vn);
    }

    // Least-squares slope over the second half of the horizon.
    double st = 0, sx = 0, stt = 0, stx = 0, cnt = 0;
    for (std::size_t k = 0; k < est.t.size(); ++k) {
        if (est.t[k] < 0.5 * horizon) continue;
        st += est.t[k];
        sx += est.crossing[k];
        stt += est.t[k] * est.t[k];
        stx += est.t[k] * est.crossing[k];
        cnt += 1;
    }
    const double den = cnt * stt - st * st;
    est.speed = den > 0.0 ? (cnt * stx - st * sx) / den : 0.0;
    return est;
}

PhasePoint evaluate_ansatz(const AnsatzProfile& a, double zeta, Point2 x) {
    return a.wave->evaluate(a.K(x) * zeta);
}

}  // namespace lvfront
