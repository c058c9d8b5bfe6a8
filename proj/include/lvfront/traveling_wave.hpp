#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "lvfront/geometry.hpp"
#include "lvfront/kinetics.hpp"
#include "lvfront/monotone_cubic.hpp"
#include "lvfront/separatrix.hpp"

namespace lvfront {

/// Standing wave (phi0, psi0) on a uniform grid over [-L, L], joining p+ at
/// -L to p- at +L. Evaluation outside [-L, L] returns the end state exactly.
class WaveProfile {
public:
    WaveProfile(std::vector<double> z, std::vector<double> phi, std::vector<double> psi,
                PhasePoint p_plus, PhasePoint p_minus);

    const std::vector<double>& z() const { return z_; }
    const std::vector<double>& phi() const { return phi_; }
    const std::vector<double>& psi() const { return psi_; }
    double L() const { return z_.back(); }
    double dz() const { return z_[1] - z_[0]; }
    std::size_t size() const { return z_.size(); }

    PhasePoint evaluate(double z) const;
    /// (phi0'(z), psi0'(z)) of the interpolant; zero in the tails.
    PhasePoint slope(double z) const;

    PhasePoint p_plus() const { return p_plus_; }
    PhasePoint p_minus() const { return p_minus_; }

    /// Location where H(phi0, psi0) crosses zero, measured on the interpolant.
    double phase_shift = 0.0;
    /// Sup-norm residual of the discrete stationary equations at interior nodes.
    double residual = 0.0;
    int newton_iterations = 0;

private:
    std::vector<double> z_, phi_, psi_;
    PhasePoint p_plus_, p_minus_;
    MonotoneCubic phi_interp_, psi_interp_;
};

enum class WaveSeed { Tanh, PiecewiseLinear };

struct WaveSolveOptions {
    double L = 60.0;
    int n = 4096;  // number of grid intervals (even, >= 400)
    double tol = 1e-10;
    WaveSeed seed = WaveSeed::Tanh;
    int max_iterations = 60;
    int max_backtracks = 20;
};

/// Damped Newton on the centred-difference stationary system with Dirichlet
/// data p+ / p- at -L / +L. The centre node's u-equation is replaced by the
/// phase condition H(U, V) = 0, which pins the translation mode.
WaveProfile solve_standing_wave(const Kinetics& kin, const HFunction& h,
                                const WaveSolveOptions& opt = {});

/// Sup-norm residual of D1 U'' + f, D2 V'' + g at the interior nodes.
double stationary_residual(const Kinetics& kin, const WaveProfile& w);

struct SpeedOptions {
    double half_length = 50.0;
    double dz = 0.1;
    int samples = 200;
};

struct SpeedEstimate {
    double speed = 0.0;
    std::vector<double> t;
    std::vector<double> crossing;
};

/// Marches u_t = D1 u_zz + f, v_t = D2 v_zz + g (Neumann ends) for `horizon`
/// time units from `initial` (a tanh front when empty) and fits the drift of
/// the H = 0 crossing over the second half by least squares.
SpeedEstimate estimate_wave_speed(const Kinetics& kin, const HFunction& h, double horizon,
                                  const WaveProfile* initial = nullptr,
                                  const SpeedOptions& opt = {});

/// Composition (U0, V0)(zeta, x) = (phi0, psi0)(K(x) zeta).
struct AnsatzProfile {
    std::shared_ptr<const WaveProfile> wave;
    std::function<double(Point2)> K;
};

PhasePoint evaluate_ansatz(const AnsatzProfile& a, double zeta, Point2 x);

}  // namespace lvfront
