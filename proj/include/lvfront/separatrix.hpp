#pragma once

#include <vector>

#include "lvfront/kinetics.hpp"
#include "lvfront/monotone_cubic.hpp"

namespace lvfront {

/// Which graph form describes S: v = zeta(u) (H = v - zeta(u)) or
/// u = zeta^{-1}(v) (H = zeta^{-1}(v) - u).
enum class GraphOrientation { VOfU, UOfV };

/// How the upper branch of the traced manifold ended: it ran past u_hi with v
/// still bounded (unbounded-U case), or v blew up first (finite-U case).
enum class UpperBranch { ReachedUHi, ReachedVCap };

struct SeparatrixOptions {
    double tol = 1e-7;          // chord-to-curve deviation bound
    double seed_offset = 1e-6;  // along the stable eigenvector
    double v_cap = 0.0;         // 0 selects 4 * max(R1/a1, R2/b2, u_hi)
    double max_step = 1e-2;
    long max_steps = 2'000'000;
};

struct SeparatrixCurve {
    std::vector<PhasePoint> samples;  // strictly increasing in u and in v
    GraphOrientation orientation = GraphOrientation::VOfU;
    UpperBranch upper = UpperBranch::ReachedUHi;
    PhasePoint saddle;
    double tol = 1e-7;
};

/// Traces the stable manifold of the saddle by time-reversed flow from both
/// sides of the saddle. Requires u_lo < u* < u_hi.
SeparatrixCurve compute_separatrix(const Kinetics& kin, double u_lo, double u_hi,
                                   const SeparatrixOptions& opt = {});

struct HValue {
    double value = 0.0;
    bool extrapolated = false;
};

/// Classifier H with H < 0 on the basin of p+, H > 0 on the basin of p-, H = 0 on S.
class HFunction {
public:
    explicit HFunction(SeparatrixCurve curve);

    HValue evaluate(PhasePoint s) const;
    double operator()(PhasePoint s) const { return evaluate(s).value; }
    /// (dH/du, dH/dv)
    PhasePoint gradient(PhasePoint s) const;

    /// zeta as a function of the graph variable (u for VOfU, v for UOfV).
    double zeta(double x) const { return interp_(x); }

    const SeparatrixCurve& curve() const { return curve_; }

private:
    SeparatrixCurve curve_;
    MonotoneCubic interp_;
};

HValue h_value(const HFunction& h, PhasePoint s);

/// Euclidean distance from s to the sampled polyline of S.
double dist_to_separatrix(const HFunction& h, PhasePoint s);

}  // namespace lvfront
