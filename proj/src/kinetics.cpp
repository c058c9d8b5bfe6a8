#include "lvfront/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lvfront/error.hpp"

namespace lvfront {

double distance(PhasePoint a, PhasePoint b) { return std::hypot(a.u - b.u, a.v - b.v); }

const char* to_string(Basin b) {
    switch (b) {
        case Basin::Delta1: return "Delta1";
        case Basin::Delta2: return "Delta2";
        case Basin::S: return "S";
        case Basin::Undecided: return "Undecided";
    }
    return "?";
}

std::array<std::complex<double>, 2> Mat2::eigenvalues() const {
    const double tr = trace();
    const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * det()));
    return {(tr - disc) / 2.0, (tr + disc) / 2.0};
}

double Mat2::norm_inf() const {
    return std::max(std::abs(a11) + std::abs(a12), std::abs(a21) + std::abs(a22));
}

Kinetics::Kinetics(const KineticsParams& p) : p_(p) {
    const double all[] = {p.D1, p.D2, p.R1, p.R2, p.a1, p.b1, p.a2, p.b2};
    for (double c : all) {
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw Error(ErrorKind::InvalidParams, "all kinetics constants must be positive and finite");
        }
    }
    const double lo = p.a1 / p.a2, mid = p.R1 / p.R2, hi = p.b1 / p.b2;
    if (!(lo < mid && mid < hi)) {
        std::ostringstream os;
        os << "bistability requires a1/a2 < R1/R2 < b1/b2, got " << lo << ", " << mid << ", " << hi;
        throw Error(ErrorKind::InvalidParams, os.str());
    }
    const double den = p.a1 * p.b2 - p.a2 * p.b1;
    eq_.p_plus = {p.R1 / p.a1, 0.0};
    eq_.p_minus = {0.0, p.R2 / p.b2};
    eq_.saddle = {(p.b2 * p.R1 - p.b1 * p.R2) / den, (p.a1 * p.R2 - p.a2 * p.R1) / den};
    eq_.origin = {0.0, 0.0};
}

Mat2 Kinetics::jacobian(PhasePoint s) const {
    return {p_.R1 - 2.0 * p_.a1 * s.u - p_.b1 * s.v, -p_.b1 * s.u,
            -p_.a2 * s.v, p_.R2 - p_.a2 * s.u - 2.0 * p_.b2 * s.v};
}

double Kinetics::jacobian_bound() const {
    // Each entry is affine in (u, v), so |entry| peaks at a corner of the box.
    const PhasePoint top = invariant_box();
    double best = 0.0;
    for (double u : {0.0, top.u}) {
        for (double v : {0.0, top.v}) best = std::max(best, jacobian({u, v}).norm_inf());
    }
    return best;
}

double Kinetics::diagonal_bound() const {
    const PhasePoint top = invariant_box();
    double best = 0.0;
    for (double u : {0.0, top.u}) {
        for (double v : {0.0, top.v}) {
            const Mat2 j = jacobian({u, v});
            best = std::max({best, std::abs(j.a11), std::abs(j.a22)});
        }
    }
    return best;
}

PhasePoint Kinetics::rk4_step(PhasePoint s, double dt) const {
    auto rhs = [this](PhasePoint q) { return PhasePoint{f(q.u, q.v), g(q.u, q.v)}; };
    const PhasePoint k1 = rhs(s);
    const PhasePoint k2 = rhs({s.u + 0.5 * dt * k1.u, s.v + 0.5 * dt * k1.v});
    const PhasePoint k3 = rhs({s.u + 0.5 * dt * k2.u, s.v + 0.5 * dt * k2.v});
    const PhasePoint k4 = rhs({s.u + dt * k3.u, s.v + dt * k3.v});
    return {s.u + dt / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
            s.v + dt / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
}

PhasePoint Kinetics::ode_flow(PhasePoint s0, double t_end, double dt) const {
    if (!(dt > 0.0) || !(t_end >= 0.0)) {
        throw Error(ErrorKind::InvalidParams, "ode_flow needs dt > 0 and t_end >= 0");
    }
    PhasePoint s = s0;
    double t = 0.0;
    while (t < t_end) {
        const double h = std::min(dt, t_end - t);
        s = rk4_step(s, h);
        if (s.u < -1e-12 || s.v < -1e-12 || !std::isfinite(s.u) || !std::isfinite(s.v)) {
            throw Error(ErrorKind::StepRejected, "trajectory left the positive quadrant; reduce dt");
        }
        t += h;
    }
    return s;
}

Basin Kinetics::classify_basin(PhasePoint s0, const BasinOptions& opt) const {
    if (s0.u < 0.0 || s0.v < 0.0) {
        throw Error(ErrorKind::InvalidParams, "classify_basin needs a point in the closed quadrant");
    }
    // The origin is an unstable node touching both basins.
    if (s0.u == 0.0 && s0.v == 0.0) return Basin::Undecided;

    PhasePoint s = s0;
    double closest_saddle = distance(s, eq_.saddle);
    const auto steps = static_cast<long>(std::ceil(opt.horizon / opt.dt));
    for (long i = 0; i <= steps; ++i) {
        closest_saddle = std::min(closest_saddle, distance(s, eq_.saddle));
        if (closest_saddle <= opt.saddle_tol) return Basin::S;
        if (distance(s, eq_.p_plus) <= opt.attractor_tol) return Basin::Delta1;
        if (distance(s, eq_.p_minus) <= opt.attractor_tol) return Basin::Delta2;
        if (i == steps) break;
        s = rk4_step(s, opt.dt);
        if (s.u < -1e-12 || s.v < -1e-12 || !std::isfinite(s.u) || !std::isfinite(s.v)) {
            throw Error(ErrorKind::StepRejected, "trajectory left the positive quadrant; reduce dt");
        }
    }
    return Basin::Undecided;
}

}  // namespace lvfront
