#pragma once

#include <vector>

#include "lvfront/grid.hpp"
#include "lvfront/rd_solver.hpp"
#include "lvfront/separatrix.hpp"

namespace lvfront {

/// Driving constant of the coefficient-gradient term. It is not derivable
/// from the kinetics here and must be supplied for heterogeneous runs.
struct DrivingConstant {
    double C = 0.0;
};

/// Normal velocity V = -(N-1) k kappa - dk/dn - (2 k (C+1) / K) dK/dn.
double normal_velocity(const Coefficients& c, DrivingConstant C, int dim, double curvature, Point2 x, Point2 normal);

/// Radius history of a sphere moving by the interface law.
struct RadialInterface {
    Point2 center;
    int dim = 2;
    std::vector<double> t, R;

    double radius_at(double time) const;
};

/// RK4 integration of dR/dt = -(N-1) k/R - k'(R) - (2k(C+1)/K) K'(R).
/// Throws Error(Extinction) when R <= 2 dt |dR/dt|.
RadialInterface evolve_radial(double R0, const Coefficients& c, DrivingConstant C, int dim, double t_end,
                              double dt, Point2 center = {});

struct PolylineEvolveOptions {
    bool redistribute = true;
    double cfl = 0.2;              // dt <= cfl * h_min^2 / k_max
    int intersection_check_every = 200;
};

/// Explicit parametric front motion; each vertex moves by V n with the
/// three-point curvature. Throws Error(SelfIntersection) on a topology change.
PolylineInterface evolve_polyline(const PolylineInterface& g0, const Coefficients& c, DrivingConstant C,
                                  double t_end, double dt, const PolylineEvolveOptions& opt = {});

/// Same flow with snapshots at the requested (non-decreasing) times.
std::vector<PolylineInterface> evolve_polyline(const PolylineInterface& g0, const Coefficients& c,
                                               DrivingConstant C, std::span<const double> probes, double dt,
                                               const PolylineEvolveOptions& opt = {});

/// Signed curvature of the circle through three consecutive vertices (positive for CCW convex).
double three_point_curvature(Point2 a, Point2 b, Point2 c);

/// Resamples a closed polyline to n vertices equidistributed in arclength.
PolylineInterface redistribute(const PolylineInterface& g, std::size_t n);

bool is_simple(const PolylineInterface& g);

/// L^2 - 4 pi A, zero only for a circle.
double isoperimetric_deficit(const PolylineInterface& g);

/// Zero set of H(u, v) on the grid: crossing positions (Line), a sphere or
/// crossing set (Radial), or the longest marching-squares loop (Rect2D).
/// Throws Error(NoFront) if H has one sign everywhere.
Front extract_front(const Field& f, const GridSpec& grid, const HFunction& h);

struct SignedDistanceField {
    std::vector<double> d;
};

SignedDistanceField signed_distance(const Front& g, const GridSpec& grid, unsigned workers = 1);

/// Hausdorff distance; polylines are compared vertex-to-segment with each
/// segment refined into `refine` sub-points.
double hausdorff_distance(const Front& a, const Front& b, int refine = 4);

}  // namespace lvfront
