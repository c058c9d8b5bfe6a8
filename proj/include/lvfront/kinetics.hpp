#pragma once

#include <array>
#include <complex>
#include <utility>

namespace lvfront {

/// A state of the two-species kinetics, u and v densities.
struct PhasePoint {
    double u = 0.0;
    double v = 0.0;
};

double distance(PhasePoint a, PhasePoint b);

/// Raw Lotka-Volterra competition constants. Validation happens in Kinetics.
struct KineticsParams {
    double D1 = 1.0, D2 = 1.0;
    double R1 = 1.0, R2 = 1.0;
    double a1 = 1.0, b1 = 2.0;
    double a2 = 2.0, b2 = 1.0;

    /// Symmetric bistable set D=1, R=1, a1=b2=1, b1=a2=2.
    static KineticsParams symmetric() { return {}; }
};

struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
    std::array<std::complex<double>, 2> eigenvalues() const;
    /// Max absolute row sum.
    double norm_inf() const;
};

struct EquilibriumSet {
    PhasePoint p_plus;   // (R1/a1, 0); (R1, 0) in the usual a1 = 1 normalisation
    PhasePoint p_minus;  // (0, R2/b2)
    PhasePoint saddle;
    PhasePoint origin;
};

enum class Basin { Delta1, Delta2, S, Undecided };

const char* to_string(Basin b);

struct BasinOptions {
    double horizon = 200.0;
    double dt = 1e-3;
    double attractor_tol = 1e-6;
    /// Closest approach to the saddle below which a trajectory is taken to lie on S.
    double saddle_tol = 1e-8;
};

/// Validated kinetics: throws Error(InvalidParams) unless all constants are
/// positive and a1/a2 < R1/R2 < b1/b2.
class Kinetics {
public:
    explicit Kinetics(const KineticsParams& p);

    const KineticsParams& params() const { return p_; }
    const EquilibriumSet& equilibria() const { return eq_; }

    double f(double u, double v) const { return (p_.R1 - p_.a1 * u - p_.b1 * v) * u; }
    double g(double u, double v) const { return (p_.R2 - p_.a2 * u - p_.b2 * v) * v; }

    std::pair<double, double> reaction(PhasePoint s) const { return {f(s.u, s.v), g(s.u, s.v)}; }
    Mat2 jacobian(PhasePoint s) const;

    /// Upper corner of the invariant rectangle [0, R1/a1] x [0, R2/b2].
    PhasePoint invariant_box() const { return {p_.R1 / p_.a1, p_.R2 / p_.b2}; }

    /// Sup of the Jacobian's inf-norm over the invariant box (attained at a corner).
    double jacobian_bound() const;
    /// Sup of |f_u| and |g_v| over the invariant box.
    double diagonal_bound() const;

    /// Classical RK4 integration of the kinetics ODE. The final step is shortened
    /// to land on t_end. Throws Error(StepRejected) if a component drops below -1e-12.
    PhasePoint ode_flow(PhasePoint s0, double t_end, double dt) const;

    Basin classify_basin(PhasePoint s0, const BasinOptions& opt = {}) const;

private:
    PhasePoint rk4_step(PhasePoint s, double dt) const;

    KineticsParams p_;
    EquilibriumSet eq_;
};

}  // namespace lvfront
