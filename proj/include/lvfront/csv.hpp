#pragma once

#include <string>
#include <vector>

#include "lvfront/grid.hpp"
#include "lvfront/interface.hpp"
#include "lvfront/kinetics.hpp"
#include "lvfront/liouville.hpp"
#include "lvfront/rd_solver.hpp"
#include "lvfront/separatrix.hpp"
#include "lvfront/traveling_wave.hpp"
#include "lvfront/validity_metrics.hpp"

namespace lvfront {

/// Shortest round-trip decimal form of x.
std::string format_number(double x);

/// Writes `text` to `path`, throwing Error(Config) if the file cannot be opened.
void write_text(const std::string& path, const std::string& text);

/// `z,phi,psi`
std::string wave_csv(const WaveProfile& w);
/// `u,zeta`: the sampled curve points (u, v) on the separatrix.
std::string separatrix_csv(const SeparatrixCurve& c);
/// `x,u,v` (line / radial) or `x,y,u,v` (rect)
std::string snapshot_csv(const Field& f, const GridSpec& grid);
/// JSON sidecar with epsilon, t, grid and kinetics parameters.
std::string snapshot_sidecar(const Field& f, const GridSpec& grid, const KineticsParams& p);
/// `t,R`
std::string radial_interface_csv(const std::vector<double>& t, const std::vector<double>& R);
/// `t,vertex_index,x,y`
std::string polyline_interface_csv(const std::vector<double>& t, const std::vector<PolylineInterface>& g);
/// `eps,t0,T,E_ii_u,E_ii_v,E_iii_u,E_iii_v,dH_max,eta_sup,theta_sup,A1_fit,A2_fit,A3_fit`; failed rows are skipped.
std::string report_csv(const SweepResult& r);
/// Rate summary JSON: Hausdorff fit plus per-epsilon status.
std::string rate_summary(const SweepResult& r);
/// `t,theta,residual`
std::string residual_csv(const std::vector<TranslateFit>& fits);

}  // namespace lvfront
