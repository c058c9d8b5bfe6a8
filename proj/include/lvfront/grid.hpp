#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "lvfront/geometry.hpp"

namespace lvfront {

enum class Geometry { Line, Radial, Rect2D };

const char* to_string(Geometry g);

/// Node-centred uniform grid. Line: nodes x0..x1. Radial: r = 0..x1 in
/// dimension `radial_dim`. Rect2D: nx * ny nodes, index = j * nx + i.
struct GridSpec {
    Geometry geometry = Geometry::Line;
    int radial_dim = 2;
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 0.0;
    std::size_t nx = 2, ny = 1;
    double dx = 1.0, dy = 0.0;

    static GridSpec line(double x0, double x1, double dx);
    static GridSpec radial(int dim, double r_max, double dr);
    static GridSpec rect(double x0, double x1, double y0, double y1, double dx);

    std::size_t size() const { return nx * ny; }
    Point2 point(std::size_t idx) const;
    /// Diffusion CFL dimension: 1 (Line), radial_dim (Radial), 2 (Rect2D).
    int stencil_dim() const;
    /// Control-volume weights (half/quarter cells at the boundary; radial
    /// shells carry the r^(N-1) measure without the sphere-area factor).
    std::vector<double> cell_volumes() const;
};

/// Coefficient fields k, h sampled on a grid plus their continuous forms.
struct Coefficients {
    std::function<double(Point2)> k;
    std::function<double(Point2)> h;
    std::vector<double> k_nodes, h_nodes;
    bool homogeneous = false;

    /// Throws Error(InvalidParams) unless k, h > 0 at every node.
    static Coefficients from_functions(const GridSpec& grid, std::function<double(Point2)> k,
                                       std::function<double(Point2)> h, bool homogeneous = false);
    static Coefficients uniform(const GridSpec& grid, double k = 1.0, double h = 1.0);

    double K(Point2 x) const;
    double k_max() const;
    double h_max() const;
};

/// 1D front: sorted crossing positions; `left_inside` says whether x below
/// the first crossing belongs to the inner (p+) region.
struct PointSetFront {
    std::vector<double> points;
    bool left_inside = true;
};

/// Circle (2D) or sphere of the radial reduction; inside is |x - c| < R.
struct CircleFront {
    Point2 center;
    double R = 0.0;
};

/// Closed polyline, counter-clockwise; the last vertex connects to the first.
struct PolylineInterface {
    std::vector<Point2> vertices;

    double signed_area() const;
    double length() const;
    bool contains(Point2 p) const;
    double distance(Point2 p) const;
};

using Front = std::variant<PointSetFront, CircleFront, PolylineInterface>;

/// Negative inside, positive outside. For Radial grids pass x = (r, 0).
double signed_distance(const Front& front, Point2 x);

/// Closest point of the front to x (the foot point p(x)).
Point2 nearest_point(const Front& front, Point2 x);

/// Polyline sampling of a circle with n vertices (counter-clockwise).
PolylineInterface circle_polyline(Point2 center, double R, std::size_t n);
PolylineInterface ellipse_polyline(Point2 center, double a, double b, std::size_t n);

}  // namespace lvfront
