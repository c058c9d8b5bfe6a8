#include "lvfront/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lvfront/error.hpp"

namespace lvfront {

const char* to_string(Geometry g) {
    switch (g) {
        case Geometry::Line: return "line";
        case Geometry::Radial: return "radial";
        case Geometry::Rect2D: return "rect2d";
    }
    return "?";
}

namespace {
std::size_t intervals(double length, double h) {
    if (!(h > 0.0) || !(length > 0.0)) throw Error(ErrorKind::InvalidParams, "grid needs dx > 0 and a positive extent");
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(length / h)));
}
}  // namespace

GridSpec GridSpec::line(double x0, double x1, double dx) {
    GridSpec g;
    g.geometry = Geometry::Line;
    g.x0 = x0;
    g.x1 = x1;
    const std::size_t n = intervals(x1 - x0, dx);
    g.nx = n + 1;
    g.dx = (x1 - x0) / static_cast<double>(n);
    return g;
}

GridSpec GridSpec::radial(int dim, double r_max, double dr) {
    if (dim < 1 || dim > 3) throw Error(ErrorKind::InvalidParams, "radial dimension must be 1, 2 or 3");
    GridSpec g = line(0.0, r_max, dr);
    g.geometry = Geometry::Radial;
    g.radial_dim = dim;
    return g;
}

GridSpec GridSpec::rect(double x0, double x1, double y0, double y1, double dx) {
    GridSpec g;
    g.geometry = Geometry::Rect2D;
    g.x0 = x0;
    g.x1 = x1;
    g.y0 = y0;
    g.y1 = y1;
    const std::size_t nxi = intervals(x1 - x0, dx);
    const std::size_t nyi = intervals(y1 - y0, dx);
    g.nx = nxi + 1;
    g.ny = nyi + 1;
    g.dx = (x1 - x0) / static_cast<double>(nxi);
    g.dy = (y1 - y0) / static_cast<double>(nyi);
    return g;
}

Point2 GridSpec::point(std::size_t idx) const {
    const std::size_t i = idx % nx, j = idx / nx;
    return {x0 + dx * static_cast<double>(i), geometry == Geometry::Rect2D ? y0 + dy * static_cast<double>(j) : 0.0};
}

int GridSpec::stencil_dim() const {
    switch (geometry) {
        case Geometry::Line: return 1;
        case Geometry::Radial: return radial_dim;
        case Geometry::Rect2D: return 2;
    }
    return 1;
}

std::vector<double> GridSpec::cell_volumes() const {
    std::vector<double> w(size());
    if (geometry == Geometry::Rect2D) {
        for (std::size_t j = 0; j < ny; ++j) {
            const double wy = (j == 0 || j + 1 == ny) ? 0.5 * dy : dy;
            for (std::size_t i = 0; i < nx; ++i) {
                const double wx = (i == 0 || i + 1 == nx) ? 0.5 * dx : dx;
                w[j * nx + i] = wx * wy;
            }
        }
        return w;
    }
    if (geometry == Geometry::Line) {
        for (std::size_t i = 0; i < nx; ++i) w[i] = (i == 0 || i + 1 == nx) ? 0.5 * dx : dx;
        return w;
    }
    const double n = radial_dim;
    for (std::size_t i = 0; i < nx; ++i) {
        const double r = dx * static_cast<double>(i);
        const double lo = i == 0 ? 0.0 : r - 0.5 * dx;
        const double hi = i + 1 == nx ? r : r + 0.5 * dx;
        w[i] = (std::pow(hi, n) - std::pow(lo, n)) / n;
    }
    return w;
}

Coefficients Coefficients::from_functions(const GridSpec& grid, std::function<double(Point2)> k,
                                          std::function<double(Point2)> h, bool homogeneous) {
    Coefficients c;
    c.k = std::move(k);
    c.h = std::move(h);
    c.homogeneous = homogeneous;
    c.k_nodes.resize(grid.size());
    c.h_nodes.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point2 x = grid.point(i);
        c.k_nodes[i] = c.k(x);
        c.h_nodes[i] = c.h(x);
        if (!(c.k_nodes[i] > 0.0) || !(c.h_nodes[i] > 0.0)) {
            throw Error(ErrorKind::InvalidParams, "coefficients k and h must be strictly positive on the grid");
        }
    }
    return c;
}

Coefficients Coefficients::uniform(const GridSpec& grid, double k, double h) {
    return from_functions(grid, [k](Point2) { return k; }, [h](Point2) { return h; }, true);
}

double Coefficients::K(Point2 x) const { return std::sqrt(h(x) / k(x)); }
double Coefficients::k_max() const { return *std::max_element(k_nodes.begin(), k_nodes.end()); }
double Coefficients::h_max() const { return *std::max_element(h_nodes.begin(), h_nodes.end()); }

double PolylineInterface::signed_area() const {
    double a = 0.0;
    for (std::size_t i = 0, n = vertices.size(); i < n; ++i) a += cross(vertices[i], vertices[(i + 1) % n]);
    return 0.5 * a;
}

double PolylineInterface::length() const {
    double l = 0.0;
    for (std::size_t i = 0, n = vertices.size(); i < n; ++i) l += lvfront::distance(vertices[i], vertices[(i + 1) % n]);
    return l;
}

bool PolylineInterface::contains(Point2 p) const {
    // Even-odd ray casting along +x.
    bool inside = false;
    for (std::size_t i = 0, n = vertices.size(), j = n - 1; i < n; j = i++) {
        const Point2 a = vertices[i], b = vertices[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < xc) inside = !inside;
        }
    }
    return inside;
}

double PolylineInterface::distance(Point2 p) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, n = vertices.size(); i < n; ++i) {
        best = std::min(best, point_segment_distance(p, vertices[i], vertices[(i + 1) % n]));
    }
    return best;
}

double signed_distance(const Front& front, Point2 x) {
    struct Visitor {
        Point2 x;
        double operator()(const PointSetFront& f) const {
            if (f.points.empty()) throw Error(ErrorKind::NoFront, "empty point-set front");
            double best = std::numeric_limits<double>::infinity();
            std::size_t below = 0;
            for (double p : f.points) {
                best = std::min(best, std::abs(x.x - p));
                if (p <= x.x) ++below;
            }
            const bool inside = (below % 2 == 0) == f.left_inside;
            return inside ? -best : best;
        }
        double operator()(const CircleFront& f) const { return lvfront::distance(x, f.center) - f.R; }
        double operator()(const PolylineInterface& f) const {
            const double d = f.distance(x);
            return f.contains(x) ? -d : d;
        }
    };
    return std::visit(Visitor{x}, front);
}

Point2 nearest_point(const Front& front, Point2 x) {
    if (const auto* f = std::get_if<PointSetFront>(&front)) {
        if (f->points.empty()) throw Error(ErrorKind::NoFront, "empty point-set front");
        double best = f->points.front();
        for (double p : f->points) {
            if (std::abs(x.x - p) < std::abs(x.x - best)) best = p;
        }
        return {best, 0.0};
    }
    if (const auto* c = std::get_if<CircleFront>(&front)) {
        const Point2 d = x - c->center;
        const double r = norm(d);
        if (r == 0.0) return c->center + Point2{c->R, 0.0};
        return c->center + (c->R / r) * d;
    }
    const auto& poly = std::get<PolylineInterface>(front);
    const auto& v = poly.vertices;
    Point2 best{};
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        const Point2 a = v[i], b = v[(i + 1) % n], e = b - a;
        const double len2 = dot(e, e);
        const double t = len2 > 0.0 ? std::clamp(dot(x - a, e) / len2, 0.0, 1.0) : 0.0;
        const Point2 q = a + t * e;
        const double d = lvfront::distance(x, q);
        if (d < best_d) {
            best_d = d;
            best = q;
        }
    }
    return best;
}

PolylineInterface circle_polyline(Point2 center, double R, std::size_t n) {
    return ellipse_polyline(center, R, R, n);
}

PolylineInterface ellipse_polyline(Point2 center, double a, double b, std::size_t n) {
    PolylineInterface p;
    p.vertices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        p.vertices.push_back({center.x + a * std::cos(t), center.y + b * std::sin(t)});
    }
    return p;
}

}  // namespace lvfront
