#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lvfront/grid.hpp"
#include "lvfront/rd_solver.hpp"
#include "lvfront/traveling_wave.hpp"

namespace lvfront {

/// Metrics of one epsilon run over the window [t0, T].
struct ErrorReport {
    double epsilon = 0.0;
    double t0 = 0.0, T = 0.0;
    double E_ii_u = 0.0, E_ii_v = 0.0;
    double E_iii_u = 0.0, E_iii_v = 0.0;
    double dH_max = 0.0;
    double eta_sup = 0.0, grad_eta_sup = 0.0;
    double theta_sup = 0.0;
    double A1_fit = 0.0, A2_fit = 0.0, A3_fit = 0.0;
    long sandwich_violations = 0;
    bool resolved = true;  // dx <= eps/8
    std::size_t probes = 0;
    std::string failure;   // non-empty when the run failed
};

struct PowerFit {
    double exponent = 0.0;  // q in value ~ C eps^q
    double constant = 0.0;
    bool valid = false;
};

struct SweepResult {
    std::vector<ErrorReport> reports;  // strictly decreasing epsilon
    PowerFit hausdorff_fit;
};

/// Start of the measurement window: factor * eps^2 |log eps|.
double window_start(double epsilon, double factor);

/// Log-log least squares of values against eps; needs >= 2 positive points.
PowerFit fit_power_law(const std::vector<double>& eps, const std::vector<double>& values);

struct ProfileError {
    double u = 0.0, v = 0.0;
};

/// sup over snapshots and nodes of |u - U0(d_eps/eps, x)| (and v), with d_eps
/// the signed distance to the snapshot's own extracted front.
ProfileError profile_error_ii(const std::vector<Field>& snapshots, const GridSpec& grid,
                              const std::vector<Front>& gamma_eps, const AnsatzProfile& ansatz);

struct ShiftedError {
    double u = 0.0, v = 0.0;
    double theta_sup = 0.0;
};

/// Errors against U0((d - eps theta(p(x))) / eps, x) with theta(p) = -d_eps(p)/eps
/// for p on the limit interface.
ShiftedError profile_error_iii(const std::vector<Field>& snapshots, const GridSpec& grid,
                               const std::vector<Front>& gamma_eps, const std::vector<Front>& gamma_limit,
                               const AnsatzProfile& ansatz);

struct GraphOffset {
    double eta_sup = 0.0;
    double grad_eta_sup = 0.0;
};

/// Normal offset eta of gamma_eps over gamma_limit. Throws
/// Error(ProjectionAmbiguous) if a normal ray within `band` meets gamma_eps
/// zero or several times.
GraphOffset graph_over_gamma(const Front& gamma_eps, const Front& gamma_limit, double band = 0.1);

struct SandwichReport {
    long violations = 0;
    long checked = 0;
    double worst = 0.0;  // largest band excess
};

struct SandwichConstants {
    double A1 = 0.0, A2 = 0.0, A3 = 0.0;
};

/// Counts node/time violations of
///   U0((d + eps A1)/eps) - eps A2 <= u <= U0((d - eps A1)/eps) + eps A2
///   V0((d - eps A1)/eps) - eps A3 <= v <= V0((d + eps A1)/eps) + eps A3.
SandwichReport sandwich_check(const std::vector<Field>& snapshots, const GridSpec& grid,
                              const std::vector<Front>& gamma_limit, const AnsatzProfile& ansatz,
                              const SandwichConstants& A);

/// Knee fit: the smallest A1 for which the required max(A2, A3) does not exceed
/// A1, together with those required A2, A3. The result has zero violations.
SandwichConstants sandwich_fit(const std::vector<Field>& snapshots, const GridSpec& grid,
                               const std::vector<Front>& gamma_limit, const AnsatzProfile& ansatz,
                               double A1_max = 50.0);

}  // namespace lvfront
