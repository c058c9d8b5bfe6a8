#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lvfront/grid.hpp"
#include "lvfront/kinetics.hpp"
#include "lvfront/separatrix.hpp"
#include "lvfront/traveling_wave.hpp"

namespace lvfront {

struct Field {
    std::vector<double> u, v;
    double t = 0.0;
    double epsilon = 1.0;
};

enum class Scheme { ExplicitEuler, IMEX };
enum class FaceMean { Arithmetic, Harmonic };

struct SolverConfig {
    double dt = 0.0;  // 0 selects stable_dt()
    Scheme scheme = Scheme::ExplicitEuler;
    double t_end = 0.0;
    FaceMean face_mean = FaceMean::Arithmetic;
    bool reaction = true;
    unsigned workers = 1;
    double box_margin = 1e-6;  // relative slack on the invariant box
};

/// Largest time step that keeps the update order-preserving:
///   explicit: min( 1/(2 N D k_max/dx^2 + h_max L/eps^2), 0.2 eps^2/(h_max L) )
///   IMEX:     0.2 eps^2/(h_max L)
/// with L the Jacobian bound over the invariant box.
double stable_dt(const GridSpec& grid, const Coefficients& c, const Kinetics& kin, double epsilon,
                 Scheme scheme = Scheme::ExplicitEuler);

/// Time stepper for u_t = D1 div(k grad u) + (h/eps^2) f(u, v) (and v alike)
/// with homogeneous Neumann boundaries, discretised as a finite-volume operator
/// on node-centred control volumes.
class RdSolver {
public:
    RdSolver(GridSpec grid, Coefficients coeff, Kinetics kin, SolverConfig cfg);

    const GridSpec& grid() const { return grid_; }
    const Coefficients& coefficients() const { return coeff_; }
    const Kinetics& kinetics() const { return kin_; }
    const SolverConfig& config() const { return cfg_; }

    /// dt actually used (cfg.dt, or stable_dt for the given epsilon when cfg.dt == 0).
    double time_step(double epsilon) const;

    /// Advances f by one step of size time_step(f.epsilon). Throws
    /// Error(StabilityViolation) on non-finite values or box exits.
    void step(Field& f) const;
    void step(Field& f, double dt) const;

    /// Steps from f.t to t_end, calling on_step after every step.
    void run(Field& f, double t_end, const std::function<void(const Field&)>& on_step = {}) const;

    /// Snapshots at the requested times (nearest step). Probes must be
    /// non-decreasing within [f0.t, cfg.t_end].
    std::vector<Field> simulate(Field f0, std::span<const double> probes) const;

    /// sum_i w_i * values_i with the grid control volumes.
    double integrate(std::span<const double> values) const;

    /// Applies the diffusion operator (without D) to `in`.
    void apply_operator(std::span<const double> in, std::span<double> out) const;

private:
    void explicit_step(Field& f, double dt) const;
    void imex_step(Field& f, double dt) const;
    void implicit_sweep(std::vector<double>& x, double coef, bool along_y) const;
    void check(const Field& f) const;

    GridSpec grid_;
    Coefficients coeff_;
    Kinetics kin_;
    SolverConfig cfg_;
    std::vector<double> volumes_;
    // Neighbour weights: L u_i = sum w (u_nb - u_i). Zero weight means no neighbour.
    std::vector<double> w_xm_, w_xp_, w_ym_, w_yp_;
};

/// Free-function forms of the stepper operations.
Field step(const Field& f, const GridSpec& grid, const Coefficients& c, const Kinetics& kin,
           const SolverConfig& cfg);
std::vector<Field> simulate(const Field& f0, const GridSpec& grid, const Coefficients& c, const Kinetics& kin,
                            const SolverConfig& cfg, std::span<const double> probes);

enum class InitialKind { WellPrepared, SteppedSmooth };

struct InitialData {
    Field field;
    double A0 = 0.0;        // inf over nodes of dist((u0,v0), S) / dist(x, Gamma0)
    double A0_layer = 0.0;  // same, restricted to the transition layer
};

/// WellPrepared: (u, v) = (phi0, psi0)(K(x) d0(x) / eps). SteppedSmooth: a
/// C0 cubic-smoothstep blend from p+ (inside) to p- (outside) over `width`,
/// placed so that H = 0 on Gamma0. Throws Error(FrontTooClose) if Gamma0 is
/// within 4 eps of the boundary.
InitialData build_initial_data(InitialKind kind, const GridSpec& grid, const Front& gamma0,
                               const Coefficients& c, const Kinetics& kin, const WaveProfile& wave,
                               const HFunction& h, double epsilon, double width = 0.1);

/// Distance from a front to the outer boundary of the grid (inf for no boundary crossing issue).
double front_boundary_clearance(const GridSpec& grid, const Front& front);

}  // namespace lvfront
