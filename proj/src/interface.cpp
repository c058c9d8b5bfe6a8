#include "lvfront/interface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "lvfront/error.hpp"
#include "lvfront/parallel.hpp"

namespace lvfront {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double directional_derivative(const std::function<double(Point2)>& fn, Point2 x, Point2 n) {
    const double h = 1e-5 * std::max(1.0, norm(x));
    return (fn(x + h * n) - fn(x - h * n)) / (2.0 * h);
}

bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
    const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

// Directed sup over sampled points of `from` of the distance to `to`.
template <class Dist>
double directed_polyline(const PolylineInterface& from, int refine, Dist dist_to) {
    double worst = 0.0;
    const std::size_t n = from.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = from.vertices[i], b = from.vertices[(i + 1) % n];
        for (int s = 0; s < refine; ++s) {
            const double t = static_cast<double>(s) / refine;
            worst = std::max(worst, dist_to(a + t * (b - a)));
        }
    }
    return worst;
}

PolylineInterface as_polyline(const CircleFront& c, std::size_t n) { return circle_polyline(c.center, c.R, n); }

}  // namespace

double normal_velocity(const Coefficients& c, DrivingConstant C, int dim, double curvature, Point2 x, Point2 normal) {
    const double k = c.k(x);
    double v = -(dim - 1) * k * curvature;
    if (!c.homogeneous) {
        auto K = [&c](Point2 p) { return c.K(p); };
        v -= directional_derivative(c.k, x, normal);
        v -= 2.0 * k * (C.C + 1.0) / c.K(x) * directional_derivative(K, x, normal);
    }
    return v;
}

double RadialInterface::radius_at(double time) const {
    if (t.empty()) throw Error(ErrorKind::InvalidParams, "empty radial history");
    if (time <= t.front()) return R.front();
    if (time >= t.back()) return R.back();
    const auto it = std::upper_bound(t.begin(), t.end(), time);
    const std::size_t i = static_cast<std::size_t>(it - t.begin());
    const double w = (time - t[i - 1]) / (t[i] - t[i - 1]);
    return (1.0 - w) * R[i - 1] + w * R[i];
}

RadialInterface evolve_radial(double R0, const Coefficients& c, DrivingConstant C, int dim, double t_end,
                              double dt, Point2 center) {
    if (!(R0 > 0.0) || !(dt > 0.0) || t_end < 0.0) {
        throw Error(ErrorKind::InvalidParams, "evolve_radial needs R0 > 0, dt > 0, t_end >= 0");
    }
    const Point2 e{1.0, 0.0};
    auto rhs = [&](double R) {
        return normal_velocity(c, C, dim, 1.0 / R, center + R * e, e);
    };
    RadialInterface out;
    out.center = center;
    out.dim = dim;
    out.t.push_back(0.0);
    out.R.push_back(R0);
    double t = 0.0, R = R0;
    const std::size_t steps = t_end > 0.0 ? static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9)) : 0;
    const double h = steps ? t_end / static_cast<double>(steps) : 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
        if (R <= 2.0 * h * std::abs(rhs(R))) {
            std::ostringstream os;
            os << "interface vanishes near t = " << t << " (R = " << R << ")";
            throw Error(ErrorKind::Extinction, os.str());
        }
        const double k1 = rhs(R);
        const double k2 = rhs(R + 0.5 * h * k1);
        const double k3 = rhs(R + 0.5 * h * k2);
        const double k4 = rhs(R + h * k3);
        R += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = (s + 1 == steps) ? t_end : t + h;
        out.t.push_back(t);
        out.R.push_back(R);
    }
    return out;
}

double three_point_curvature(Point2 a, Point2 b, Point2 c) {
    const double den = distance(a, b) * distance(b, c) * distance(a, c);
    return den > 0.0 ? 2.0 * cross(b - a, c - b) / den : 0.0;
}

PolylineInterface redistribute(const PolylineInterface& g, std::size_t n) {
    const auto& p = g.vertices;
    const std::size_t m = p.size();
    std::vector<double> s(m + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i) s[i + 1] = s[i] + distance(p[i], p[(i + 1) % m]);
    const double total = s[m];
    // Catmull-Rom tangents on the chord-length parameter.
    auto at = [&](std::size_t i) { return p[i % m]; };
    auto tangent = [&](std::size_t i) {
        const std::size_t ip = (i + 1) % m, im = (i + m - 1) % m;
        const double hm = distance(p[im], p[i]), hp = distance(p[i], p[ip]);
        return (1.0 / (hm + hp)) * (p[ip] - p[im]);
    };
    PolylineInterface out;
    out.vertices.reserve(n);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double target = total * static_cast<double>(k) / static_cast<double>(n);
        while (seg + 1 < m && s[seg + 1] <= target) ++seg;
        const double h = s[seg + 1] - s[seg];
        const double t = h > 0.0 ? (target - s[seg]) / h : 0.0;
        const double t2 = t * t, t3 = t2 * t;
        const Point2 p0 = at(seg), p1 = at(seg + 1);
        const Point2 m0 = h * tangent(seg % m), m1 = h * tangent((seg + 1) % m);
        out.vertices.push_back((2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * p1 +
                               (t3 - t2) * m1);
    }
    return out;
}

bool is_simple(const PolylineInterface& g) {
    const auto& p = g.vertices;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (segments_cross(p[i], p[(i + 1) % n], p[j], p[(j + 1) % n])) return false;
        }
    }
    return true;
}

double isoperimetric_deficit(const PolylineInterface& g) {
    const double L = g.length();
    return L * L - 4.0 * std::numbers::pi * std::abs(g.signed_area());
}

std::vector<PolylineInterface> evolve_polyline(const PolylineInterface& g0, const Coefficients& c,
                                               DrivingConstant C, std::span<const double> probes, double dt,
                                               const PolylineEvolveOptions& opt) {
    if (g0.vertices.size() < 64) throw Error(ErrorKind::InvalidParams, "polyline needs at least 64 vertices");
    if (!is_simple(g0)) throw Error(ErrorKind::SelfIntersection, "initial polyline is not simple");
    PolylineInterface g = g0;
    if (g.signed_area() < 0.0) std::reverse(g.vertices.begin(), g.vertices.end());
    const std::size_t n = g.vertices.size();
    std::vector<PolylineInterface> out;
    out.reserve(probes.size());
    double t = 0.0;
    long step_count = 0;
    std::vector<Point2> next(n);
    for (double target : probes) {
        if (target < t - 1e-15) throw Error(ErrorKind::InvalidParams, "probe times must be non-decreasing");
        while (t < target && dt > 0.0) {
            const double h_min = g.length() / static_cast<double>(n);
            double k_max = 0.0;
            for (const auto& v : g.vertices) k_max = std::max(k_max, c.k(v));
            const double h = std::min({dt, opt.cfl * h_min * h_min / k_max, target - t});
            for (std::size_t i = 0; i < n; ++i) {
                const Point2 a = g.vertices[(i + n - 1) % n], b = g.vertices[i], d = g.vertices[(i + 1) % n];
                const Point2 tan = d - a;
                const double tl = norm(tan);
                const Point2 normal{tan.y / tl, -tan.x / tl};  // outward for CCW
                const double V = normal_velocity(c, C, 2, three_point_curvature(a, b, d), b, normal);
                next[i] = b + (h * V) * normal;
            }
            g.vertices.swap(next);
            if (opt.redistribute) g = redistribute(g, n);
            next.resize(n);
            t = (target - t - h <= 1e-15) ? target : t + h;
            if (++step_count % opt.intersection_check_every == 0 && !is_simple(g)) {
                std::ostringstream os;
                os << "front self-intersects at t = " << t;
                throw Error(ErrorKind::SelfIntersection, os.str());
            }
            if (g.signed_area() <= 0.0) throw Error(ErrorKind::Extinction, "polyline collapsed");
        }
        if (!is_simple(g)) throw Error(ErrorKind::SelfIntersection, "front self-intersects");
        out.push_back(g);
    }
    return out;
}

PolylineInterface evolve_polyline(const PolylineInterface& g0, const Coefficients& c, DrivingConstant C,
                                  double t_end, double dt, const PolylineEvolveOptions& opt) {
    const double probe[] = {t_end};
    return evolve_polyline(g0, c, C, probe, dt, opt).front();
}

Front extract_front(const Field& f, const GridSpec& grid, const HFunction& h) {
    const std::size_t n = grid.size();
    std::vector<double> H(n);
    bool any_neg = false, any_pos = false;
    for (std::size_t i = 0; i < n; ++i) {
        H[i] = h({f.u[i], f.v[i]});
        (H[i] < 0.0 ? any_neg : any_pos) = true;
    }
    if (!(any_neg && any_pos)) throw Error(ErrorKind::NoFront, "H(u, v) has constant sign on the grid");

    if (grid.geometry != Geometry::Rect2D) {
        PointSetFront pts;
        pts.left_inside = H[0] < 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            if ((H[i - 1] < 0.0) != (H[i] < 0.0)) {
                const double x = grid.point(i - 1).x + grid.dx * H[i - 1] / (H[i - 1] - H[i]);
                pts.points.push_back(x);
            }
        }
        if (grid.geometry == Geometry::Radial && pts.points.size() == 1 && pts.left_inside) {
            return CircleFront{{0.0, 0.0}, pts.points.front()};
        }
        return pts;
    }

    // Marching squares. Edge ids: 2*node for the +x edge, 2*node+1 for the +y edge.
    const std::size_t nx = grid.nx, ny = grid.ny;
    std::map<std::size_t, Point2> crossing;
    auto edge_point = [&](std::size_t a, std::size_t b, std::size_t id) -> std::size_t {
        if (!crossing.count(id)) {
            const Point2 pa = grid.point(a), pb = grid.point(b);
            const double w = H[a] / (H[a] - H[b]);
            crossing[id] = pa + w * (pb - pa);
        }
        return id;
    };
    std::map<std::size_t, std::vector<std::size_t>> adj;
    auto link = [&](std::size_t e1, std::size_t e2) {
        adj[e1].push_back(e2);
        adj[e2].push_back(e1);
    };
    for (std::size_t j = 0; j + 1 < ny; ++j) {
        for (std::size_t i = 0; i + 1 < nx; ++i) {
            const std::size_t n00 = j * nx + i, n10 = n00 + 1, n01 = n00 + nx, n11 = n01 + 1;
            // Cell edges in cyclic order: bottom, right, top, left.
            const std::size_t ends[4][2] = {{n00, n10}, {n10, n11}, {n01, n11}, {n00, n01}};
            const std::size_t ids[4] = {2 * n00, 2 * n10 + 1, 2 * n01, 2 * n00 + 1};
            std::vector<std::size_t> hits;
            for (int e = 0; e < 4; ++e) {
                if ((H[ends[e][0]] < 0.0) != (H[ends[e][1]] < 0.0)) hits.push_back(edge_point(ends[e][0], ends[e][1], ids[e]));
            }
            if (hits.size() == 2) {
                link(hits[0], hits[1]);
            } else if (hits.size() == 4) {
                // Saddle cell: connect so the centre value's sign region stays connected.
                const double centre = 0.25 * (H[n00] + H[n10] + H[n01] + H[n11]);
                const bool corner_neg = H[n00] < 0.0;
                if ((centre < 0.0) == corner_neg) {
                    link(hits[0], hits[1]);
                    link(hits[2], hits[3]);
                } else {
                    link(hits[0], hits[3]);
                    link(hits[1], hits[2]);
                }
            }
        }
    }
    std::map<std::size_t, bool> seen;
    PolylineInterface best;
    double best_len = -1.0;
    for (const auto& [start, _] : adj) {
        if (seen[start]) continue;
        PolylineInterface loop;
        std::size_t prev = start, cur = start;
        // Walk to one end for open chains first.
        for (std::size_t guard = 0; guard < adj.size(); ++guard) {
            const auto& nb = adj[cur];
            if (nb.size() < 2) break;
            const std::size_t nxt = nb[0] == prev ? nb[1] : nb[0];
            if (nxt == start) break;
            prev = cur;
            cur = nxt;
        }
        const std::size_t first = cur;
        prev = std::numeric_limits<std::size_t>::max();
        for (;;) {
            seen[cur] = true;
            loop.vertices.push_back(crossing[cur]);
            const auto& nb = adj[cur];
            std::size_t nxt = std::numeric_limits<std::size_t>::max();
            for (std::size_t cand : nb) {
                if (cand != prev && !seen[cand]) {
                    nxt = cand;
                    break;
                }
            }
            if (nxt == std::numeric_limits<std::size_t>::max() || nxt == first) break;
            prev = cur;
            cur = nxt;
        }
        const double len = loop.vertices.size() > 2 ? loop.length() : 0.0;
        if (len > best_len) {
            best_len = len;
            best = std::move(loop);
        }
    }
    if (best.vertices.size() < 3) throw Error(ErrorKind::NoFront, "no closed zero loop of H");
    // Inside (H < 0) on the left of a counter-clockwise loop.
    if (best.signed_area() < 0.0) std::reverse(best.vertices.begin(), best.vertices.end());
    return best;
}

SignedDistanceField signed_distance(const Front& g, const GridSpec& grid, unsigned workers) {
    SignedDistanceField out;
    out.d.resize(grid.size());
    parallel_for(grid.size(), workers, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) out.d[i] = signed_distance(g, grid.point(i));
    });
    return out;
}

double hausdorff_distance(const Front& a, const Front& b, int refine) {
    refine = std::max(refine, 1);
    if (const auto* ca = std::get_if<CircleFront>(&a)) {
        if (const auto* cb = std::get_if<CircleFront>(&b)) {
            if (distance(ca->center, cb->center) == 0.0) return std::abs(ca->R - cb->R);
        }
    }
    if (const auto* pa = std::get_if<PointSetFront>(&a)) {
        const auto* pb = std::get_if<PointSetFront>(&b);
        if (!pb) throw Error(ErrorKind::InvalidParams, "cannot compare a point set with a curve");
        if (pa->points.empty() || pb->points.empty()) throw Error(ErrorKind::InvalidParams, "empty front");
        auto directed = [](const std::vector<double>& from, const std::vector<double>& to) {
            double worst = 0.0;
            for (double x : from) {
                double best = kInf;
                for (double y : to) best = std::min(best, std::abs(x - y));
                worst = std::max(worst, best);
            }
            return worst;
        };
        return std::max(directed(pa->points, pb->points), directed(pb->points, pa->points));
    }
    auto to_poly = [](const Front& f, std::size_t n) {
        if (const auto* c = std::get_if<CircleFront>(&f)) return as_polyline(*c, n);
        if (const auto* p = std::get_if<PolylineInterface>(&f)) return *p;
        throw Error(ErrorKind::InvalidParams, "cannot compare a point set with a curve");
    };
    auto dist_fn = [](const Front& f) -> std::function<double(Point2)> {
        if (const auto* c = std::get_if<CircleFront>(&f)) {
            return [c](Point2 x) { return std::abs(distance(x, c->center) - c->R); };
        }
        const auto& p = std::get<PolylineInterface>(f);
        return [&p](Point2 x) { return p.distance(x); };
    };
    std::size_t n = 1024;
    if (const auto* p = std::get_if<PolylineInterface>(&a)) n = std::max(n, 4 * p->vertices.size());
    if (const auto* p = std::get_if<PolylineInterface>(&b)) n = std::max(n, 4 * p->vertices.size());
    const PolylineInterface pa = to_poly(a, n), pb = to_poly(b, n);
    return std::max(directed_polyline(pa, refine, dist_fn(b)), directed_polyline(pb, refine, dist_fn(a)));
}

}  // namespace lvfront
