#include "lvfront/validity_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lvfront/error.hpp"
#include "lvfront/interface.hpp"

namespace lvfront {
namespace {

constexpr std::size_t kCirclePolylineVertices = 1024;

PolylineInterface as_curve(const Front& f) {
    if (const auto* c = std::get_if<CircleFront>(&f)) return circle_polyline(c->center, c->R, kCirclePolylineVertices);
    return std::get<PolylineInterface>(f);
}

void require_sizes(const std::vector<Field>& snaps, std::size_t fronts) {
    if (snaps.size() != fronts) throw Error(ErrorKind::InvalidParams, "one front per snapshot is required");
}

// Required band slack per node: how far u sits outside [lo, hi].
double excess(double value, double lo, double hi) { return std::max({lo - value, value - hi, 0.0}); }

struct BandNeeds {
    double a2 = 0.0, a3 = 0.0;  // in units of eps
};

BandNeeds band_needs(const std::vector<Field>& snaps, const GridSpec& grid, const std::vector<SignedDistanceField>& d,
                     const AnsatzProfile& ansatz, double A1) {
    BandNeeds need;
    for (std::size_t k = 0; k < snaps.size(); ++k) {
        const double eps = snaps[k].epsilon;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Point2 x = grid.point(i);
            const PhasePoint plus = evaluate_ansatz(ansatz, (d[k].d[i] + eps * A1) / eps, x);
            const PhasePoint minus = evaluate_ansatz(ansatz, (d[k].d[i] - eps * A1) / eps, x);
            need.a2 = std::max(need.a2, excess(snaps[k].u[i], plus.u, minus.u) / eps);
            need.a3 = std::max(need.a3, excess(snaps[k].v[i], minus.v, plus.v) / eps);
        }
    }
    return need;
}

}  // namespace

double window_start(double epsilon, double factor) { return factor * epsilon * epsilon * std::abs(std::log(epsilon)); }

PowerFit fit_power_law(const std::vector<double>& eps, const std::vector<double>& values) {
    PowerFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, n = 0;
    for (std::size_t i = 0; i < eps.size() && i < values.size(); ++i) {
        if (!(eps[i] > 0.0) || !(values[i] > 0.0)) continue;
        const double x = std::log(eps[i]), y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        n += 1;
    }
    const double den = n * sxx - sx * sx;
    if (n < 2 || !(std::abs(den) > 0.0)) return fit;
    fit.exponent = (n * sxy - sx * sy) / den;
    fit.constant = std::exp((sy - fit.exponent * sx) / n);
    fit.valid = true;
    return fit;
}

ProfileError profile_error_ii(const std::vector<Field>& snapshots, const GridSpec& grid,
                              const std::vector<Front>& gamma_eps, const AnsatzProfile& ansatz) {
    require_sizes(snapshots, gamma_eps.size());
    ProfileError e;
    for (std::size_t k = 0; k < snapshots.size(); ++k) {
        const auto& f = snapshots[k];
        const auto d = signed_distance(gamma_eps[k], grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const PhasePoint a = evaluate_ansatz(ansatz, d.d[i] / f.epsilon, grid.point(i));
            e.u = std::max(e.u, std::abs(f.u[i] - a.u));
            e.v = std::max(e.v, std::abs(f.v[i] - a.v));
        }
    }
    return e;
}

ShiftedError profile_error_iii(const std::vector<Field>& snapshots, const GridSpec& grid,
                               const std::vector<Front>& gamma_eps, const std::vector<Front>& gamma_limit,
                               const AnsatzProfile& ansatz) {
    require_sizes(snapshots, gamma_eps.size());
    require_sizes(snapshots, gamma_limit.size());
    ShiftedError e;
    for (std::size_t k = 0; k < snapshots.size(); ++k) {
        const auto& f = snapshots[k];
        const double eps = f.epsilon;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Point2 x = grid.point(i);
            const double d = signed_distance(gamma_limit[k], x);
            const Point2 p = nearest_point(gamma_limit[k], x);
            const double theta = -signed_distance(gamma_eps[k], p) / eps;
            e.theta_sup = std::max(e.theta_sup, std::abs(theta));
            const PhasePoint a = evaluate_ansatz(ansatz, (d - eps * theta) / eps, x);
            e.u = std::max(e.u, std::abs(f.u[i] - a.u));
            e.v = std::max(e.v, std::abs(f.v[i] - a.v));
        }
    }
    return e;
}

GraphOffset graph_over_gamma(const Front& gamma_eps, const Front& gamma_limit, double band) {
    GraphOffset out;
    if (const auto* lim = std::get_if<PointSetFront>(&gamma_limit)) {
        const auto* eps = std::get_if<PointSetFront>(&gamma_eps);
        if (!eps) throw Error(ErrorKind::InvalidParams, "graph_over_gamma: mismatched front kinds");
        std::vector<double> eta;
        for (std::size_t i = 0; i < lim->points.size(); ++i) {
            // Outward normal points from the inner region; parity flips at each crossing.
            const bool inside_left = (i % 2 == 0) == lim->left_inside;
            const double normal = inside_left ? 1.0 : -1.0;
            int hits = 0;
            double offset = 0.0;
            for (double q : eps->points) {
                if (std::abs(q - lim->points[i]) <= band) {
                    ++hits;
                    offset = (q - lim->points[i]) * normal;
                }
            }
            if (hits != 1) throw Error(ErrorKind::ProjectionAmbiguous, "normal projection onto the front is not single-valued");
            eta.push_back(offset);
            out.eta_sup = std::max(out.eta_sup, std::abs(offset));
        }
        return out;
    }
    const auto* ce = std::get_if<CircleFront>(&gamma_eps);
    const auto* cl = std::get_if<CircleFront>(&gamma_limit);
    if (ce && cl && distance(ce->center, cl->center) == 0.0) {
        if (std::abs(ce->R - cl->R) > band) throw Error(ErrorKind::ProjectionAmbiguous, "fronts farther apart than the band");
        out.eta_sup = std::abs(ce->R - cl->R);
        out.grad_eta_sup = 0.0;
        return out;
    }
    const PolylineInterface lim = as_curve(gamma_limit);
    const PolylineInterface eps = as_curve(gamma_eps);
    const auto& pv = lim.vertices;
    const auto& qv = eps.vertices;
    const std::size_t n = pv.size(), m = qv.size();
    std::vector<double> eta(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 tan = pv[(i + 1) % n] - pv[(i + n - 1) % n];
        const Point2 normal = (1.0 / norm(tan)) * Point2{tan.y, -tan.x};
        std::vector<double> hits;
        for (std::size_t j = 0; j < m; ++j) {
            const Point2 a = qv[j], b = qv[(j + 1) % m], e = b - a;
            const double den = cross(normal, e);
            if (den == 0.0) continue;
            const Point2 w = a - pv[i];
            const double s = cross(w, e) / den;
            const double tau = cross(w, normal) / den;
            if (tau >= -1e-12 && tau <= 1.0 + 1e-12 && std::abs(s) <= band) hits.push_back(s);
        }
        // A ray through a shared vertex is seen by both adjacent segments.
        std::sort(hits.begin(), hits.end());
        hits.erase(std::unique(hits.begin(), hits.end(), [](double x, double y) { return y - x <= 1e-10; }), hits.end());
        if (hits.size() != 1) {
            throw Error(ErrorKind::ProjectionAmbiguous, "normal ray meets the front " + std::to_string(hits.size()) + " times");
        }
        eta[i] = hits.front();
        out.eta_sup = std::max(out.eta_sup, std::abs(eta[i]));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double ds = distance(pv[i], pv[(i + 1) % n]);
        if (ds > 0.0) out.grad_eta_sup = std::max(out.grad_eta_sup, std::abs(eta[(i + 1) % n] - eta[i]) / ds);
    }
    return out;
}

SandwichReport sandwich_check(const std::vector<Field>& snapshots, const GridSpec& grid,
                              const std::vector<Front>& gamma_limit, const AnsatzProfile& ansatz,
                              const SandwichConstants& A) {
    require_sizes(snapshots, gamma_limit.size());
    SandwichReport rep;
    for (std::size_t k = 0; k < snapshots.size(); ++k) {
        const auto& f = snapshots[k];
        const double eps = f.epsilon;
        const auto d = signed_distance(gamma_limit[k], grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Point2 x = grid.point(i);
            const PhasePoint plus = evaluate_ansatz(ansatz, (d.d[i] + eps * A.A1) / eps, x);
            const PhasePoint minus = evaluate_ansatz(ansatz, (d.d[i] - eps * A.A1) / eps, x);
            const double eu = excess(f.u[i], plus.u - eps * A.A2, minus.u + eps * A.A2);
            const double ev = excess(f.v[i], minus.v - eps * A.A3, plus.v + eps * A.A3);
            ++rep.checked;
            if (eu > 1e-12 || ev > 1e-12) ++rep.violations;
            rep.worst = std::max({rep.worst, eu, ev});
        }
    }
    return rep;
}

SandwichConstants sandwich_fit(const std::vector<Field>& snapshots, const GridSpec& grid,
                               const std::vector<Front>& gamma_limit, const AnsatzProfile& ansatz, double A1_max) {
    require_sizes(snapshots, gamma_limit.size());
    std::vector<SignedDistanceField> d;
    d.reserve(snapshots.size());
    for (const auto& g : gamma_limit) d.push_back(signed_distance(g, grid));
    auto gap = [&](double A1) {
        const BandNeeds need = band_needs(snapshots, grid, d, ansatz, A1);
        return std::max(need.a2, need.a3) - A1;
    };
    double lo = 0.0, hi = A1_max;
    if (gap(lo) <= 0.0) {
        hi = 0.0;
    } else {
        if (gap(hi) > 0.0) throw Error(ErrorKind::FitOutOfBracket, "sandwich constants exceed the search bracket");
        for (int it = 0; it < 60 && hi - lo > 1e-9 * std::max(1.0, hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            (gap(mid) > 0.0 ? lo : hi) = mid;
        }
    }
    const BandNeeds need = band_needs(snapshots, grid, d, ansatz, hi);
    // Margin keeps the fitted bands strictly feasible against round-off in the recheck.
    const double slack = 1e-9;
    return {hi, need.a2 + slack, need.a3 + slack};
}

}  // namespace lvfront
