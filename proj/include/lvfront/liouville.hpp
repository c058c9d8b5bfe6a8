#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "lvfront/kinetics.hpp"
#include "lvfront/rd_solver.hpp"
#include "lvfront/traveling_wave.hpp"

namespace lvfront {

struct ComparisonResult {
    /// max over nodes and steps of max(u2 - u1, v1 - v2, 0)
    double max_violation = 0.0;
    std::size_t steps = 0;
};

/// Evolves two fields with the same solver and tracks the competitive order
/// u1 >= u2, v1 <= v2 (checked at t = 0 and after every step).
ComparisonResult comparison_test(const RdSolver& solver, Field first, Field second, double t_end);

double order_violation(const Field& first, const Field& second);

enum class BlendKind {
    UpperEnvelope,  // (max of u-translates, max of v-translates)
    LowerEnvelope,  // (min, min)
    RandomSmooth,   // independent smooth random weights for u and v
};

/// Initial data squeezed between the wave translates shifted by a < b.
struct SandwichSeed {
    double a = -2.0, b = 2.0;
    BlendKind blend = BlendKind::RandomSmooth;
    std::uint64_t rng_seed = 0;
};

struct TranslateFit {
    double t = 0.0;
    double theta = 0.0;
    double residual = 0.0;  // sup distance to (phi0, psi0)(. - theta)
};

struct LiouvilleOptions {
    double horizon = 100.0;
    int probes = 20;
    double theta_tol = 1e-6;
};

/// Seed field on the wave's own grid.
Field sandwich_initial_data(const WaveProfile& wave, const SandwichSeed& seed);

/// Best translate by golden-section search on [a - 1, b + 1]. Throws
/// Error(FitOutOfBracket) if the optimum sits on the bracket edge.
TranslateFit fit_translate(const WaveProfile& wave, const std::vector<double>& u, const std::vector<double>& v,
                           double lo, double hi, double tol = 1e-6);

/// Marches u_t = D1 u_zz + f, v_t = D2 v_zz + g on the wave grid with the wave's
/// end states held fixed, fitting a translate at evenly spaced probe times.
std::vector<TranslateFit> liouville_convergence_test(const Kinetics& kin, const WaveProfile& wave,
                                                     const SandwichSeed& seed, const LiouvilleOptions& opt = {});

using ReactionFn = std::function<std::pair<double, double>(double, double)>;

/// Samples the (u, -v) transformed system on [0, box.u] x [0, box.v] and
/// checks that its off-diagonal Jacobian entries are nonnegative.
bool cooperation_transform_check(const ReactionFn& reaction, PhasePoint box, int samples = 41);
bool cooperation_transform_check(const Kinetics& kin);

}  // namespace lvfront
