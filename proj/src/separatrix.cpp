#include "lvfront/separatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lvfront/error.hpp"

namespace lvfront {
namespace {

struct Vec {
    double u, v;
};

PhasePoint add(PhasePoint s, Vec d, double h) { return {s.u + h * d.u, s.v + h * d.v}; }

double point_segment_distance(PhasePoint p, PhasePoint a, PhasePoint b) {
    const double du = b.u - a.u, dv = b.v - a.v;
    const double len2 = du * du + dv * dv;
    double t = len2 > 0.0 ? ((p.u - a.u) * du + (p.v - a.v) * dv) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.u - (a.u + t * du), p.v - (a.v + t * dv));
}

// Unit-speed time-reversed kinetics: ds/dsigma = -F(s)/|F(s)|.
class ReversedFlow {
public:
    explicit ReversedFlow(const Kinetics& kin) : kin_(kin) {}

    Vec direction(PhasePoint s) const {
        const double f = kin_.f(s.u, s.v), g = kin_.g(s.u, s.v);
        const double n = std::hypot(f, g);
        if (n == 0.0) return {0.0, 0.0};
        return {-f / n, -g / n};
    }

    PhasePoint rk4(PhasePoint s, double h) const {
        const Vec k1 = direction(s);
        const Vec k2 = direction(add(s, k1, 0.5 * h));
        const Vec k3 = direction(add(s, k2, 0.5 * h));
        const Vec k4 = direction(add(s, k3, h));
        return {s.u + h / 6.0 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u),
                s.v + h / 6.0 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v)};
    }

private:
    const Kinetics& kin_;
};

// Traces one branch of the manifold. Stops when `done` says so; returns the
// sampled points (excluding the seed) and whether the stop was clean.
template <class Done>
std::vector<PhasePoint> trace_branch(const ReversedFlow& flow, PhasePoint seed,
                                     const SeparatrixOptions& opt, Done done) {
    std::vector<PhasePoint> pts;
    PhasePoint s = seed;
    double h = std::min(1e-4, opt.max_step);
    for (long step = 0; step < opt.max_steps; ++step) {
        const PhasePoint full = flow.rk4(s, h);
        const PhasePoint mid = flow.rk4(s, 0.5 * h);
        const PhasePoint two = flow.rk4(mid, 0.5 * h);
        const double local_err = distance(full, two);
        const double chord_dev = point_segment_distance(mid, s, two);
        if ((chord_dev > opt.tol || local_err > 0.01 * opt.tol) && h > 1e-12) {
            h *= 0.5;
            continue;
        }
        s = two;
        pts.push_back(s);
        if (done(s)) return pts;
        if (chord_dev < 0.25 * opt.tol && local_err < 0.0025 * opt.tol) h = std::min(1.5 * h, opt.max_step);
    }
    throw Error(ErrorKind::FlowSingular, "separatrix trace did not terminate within max_steps");
}

}  // namespace

SeparatrixCurve compute_separatrix(const Kinetics& kin, double u_lo, double u_hi,
                                   const SeparatrixOptions& opt) {
    const PhasePoint saddle = kin.equilibria().saddle;
    if (!(u_lo < saddle.u && saddle.u < u_hi) || !(opt.tol > 0.0)) {
        throw Error(ErrorKind::InvalidParams, "compute_separatrix needs u_lo < u* < u_hi and tol > 0");
    }
    const Mat2 j = kin.jacobian(saddle);
    const auto eig = j.eigenvalues();
    const double lambda_s = std::min(eig[0].real(), eig[1].real());
    if (!(lambda_s < 0.0) || std::abs(eig[0].imag()) > 0.0) {
        throw Error(ErrorKind::FlowSingular, "saddle has no real stable eigenvalue");
    }
    // (J - lambda I) e = 0; use the better-conditioned row.
    Vec e = std::abs(j.a12) >= std::abs(j.a21) ? Vec{j.a12, lambda_s - j.a11}
                                               : Vec{lambda_s - j.a22, j.a21};
    const double n = std::hypot(e.u, e.v);
    e = {e.u / n, e.v / n};
    if (e.u < 0.0) e = {-e.u, -e.v};

    const auto box = kin.invariant_box();
    const double v_cap = opt.v_cap > 0.0 ? opt.v_cap : 4.0 * std::max({box.u, box.v, u_hi});

    const ReversedFlow flow(kin);
    const PhasePoint lower_seed = add(saddle, e, -opt.seed_offset);
    const PhasePoint upper_seed = add(saddle, e, opt.seed_offset);

    auto lower = trace_branch(flow, lower_seed, opt, [&](PhasePoint s) {
        return s.u <= u_lo || std::hypot(s.u, s.v) < 1e-12;
    });
    bool hit_v_cap = false;
    auto upper = trace_branch(flow, upper_seed, opt, [&](PhasePoint s) {
        if (s.v >= v_cap) hit_v_cap = true;
        return s.u >= u_hi || s.v >= v_cap;
    });

    SeparatrixCurve curve;
    curve.saddle = saddle;
    curve.tol = opt.tol;
    curve.upper = hit_v_cap ? UpperBranch::ReachedVCap : UpperBranch::ReachedUHi;
    curve.samples.reserve(lower.size() + upper.size() + 4);
    curve.samples.push_back({0.0, 0.0});
    for (auto it = lower.rbegin(); it != lower.rend(); ++it) curve.samples.push_back(*it);
    curve.samples.push_back(lower_seed);
    curve.samples.push_back(saddle);
    curve.samples.push_back(upper_seed);
    for (const auto& s : upper) curve.samples.push_back(s);

    for (std::size_t i = 1; i < curve.samples.size(); ++i) {
        const auto& a = curve.samples[i - 1];
        const auto& b = curve.samples[i];
        if (!(b.u > a.u) || !(b.v > a.v)) {
            throw Error(ErrorKind::FlowSingular, "traced manifold is not a strictly increasing graph");
        }
    }
    const double u_extent = curve.samples.back().u - curve.samples.front().u;
    const double v_extent = curve.samples.back().v - curve.samples.front().v;
    curve.orientation = u_extent >= v_extent ? GraphOrientation::VOfU : GraphOrientation::UOfV;
    return curve;
}

HFunction::HFunction(SeparatrixCurve curve) : curve_(std::move(curve)) {
    std::vector<double> us, vs;
    us.reserve(curve_.samples.size());
    vs.reserve(curve_.samples.size());
    for (const auto& s : curve_.samples) {
        us.push_back(s.u);
        vs.push_back(s.v);
    }
    if (curve_.orientation == GraphOrientation::VOfU) {
        interp_ = MonotoneCubic(std::move(us), std::move(vs));
    } else {
        interp_ = MonotoneCubic(std::move(vs), std::move(us));
    }
}

HValue HFunction::evaluate(PhasePoint s) const {
    if (curve_.orientation == GraphOrientation::VOfU) {
        return {s.v - interp_(s.u), !interp_.contains(s.u)};
    }
    return {interp_(s.v) - s.u, !interp_.contains(s.v)};
}

PhasePoint HFunction::gradient(PhasePoint s) const {
    if (curve_.orientation == GraphOrientation::VOfU) return {-interp_.derivative(s.u), 1.0};
    return {-1.0, interp_.derivative(s.v)};
}

HValue h_value(const HFunction& h, PhasePoint s) { return h.evaluate(s); }

double dist_to_separatrix(const HFunction& h, PhasePoint s) {
    const auto& pts = h.curve().samples;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < pts.size(); ++i) {
        best = std::min(best, point_segment_distance(s, pts[i - 1], pts[i]));
    }
    return best;
}

}  // namespace lvfront
