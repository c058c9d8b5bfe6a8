#include "lvfront/csv.hpp"

#include <charconv>
#include <fstream>

#include <json.hpp>

#include "lvfront/error.hpp"

namespace lvfront {

std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Config, "cannot write '" + path + "'");
    out << text;
}

namespace {

void row(std::string& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) out += ',';
        out += format_number(v);
        first = false;
    }
    out += '\n';
}

}  // namespace

std::string wave_csv(const WaveProfile& w) {
    std::string out = "z,phi,psi\n";
    for (std::size_t i = 0; i < w.size(); ++i) row(out, {w.z()[i], w.phi()[i], w.psi()[i]});
    return out;
}

std::string separatrix_csv(const SeparatrixCurve& c) {
    std::string out = "u,zeta\n";
    for (const auto& s : c.samples) row(out, {s.u, s.v});
    return out;
}

std::string snapshot_csv(const Field& f, const GridSpec& grid) {
    const bool two_d = grid.geometry == Geometry::Rect2D;
    std::string out = two_d ? "x,y,u,v\n" : "x,u,v\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point2 p = grid.point(i);
        if (two_d) {
            row(out, {p.x, p.y, f.u[i], f.v[i]});
        } else {
            row(out, {p.x, f.u[i], f.v[i]});
        }
    }
    return out;
}

std::string snapshot_sidecar(const Field& f, const GridSpec& grid, const KineticsParams& p) {
    nlohmann::ordered_json j;
    j["epsilon"] = f.epsilon;
    j["t"] = f.t;
    j["grid"] = {{"geometry", to_string(grid.geometry)},
                 {"radial_dim", grid.radial_dim},
                 {"x0", grid.x0},
                 {"x1", grid.x1},
                 {"y0", grid.y0},
                 {"y1", grid.y1},
                 {"nx", grid.nx},
                 {"ny", grid.ny},
                 {"dx", grid.dx}};
    j["kinetics"] = {{"D1", p.D1}, {"D2", p.D2}, {"R1", p.R1}, {"R2", p.R2},
                     {"a1", p.a1}, {"b1", p.b1}, {"a2", p.a2}, {"b2", p.b2}};
    return j.dump(2) + "\n";
}

std::string radial_interface_csv(const std::vector<double>& t, const std::vector<double>& R) {
    std::string out = "t,R\n";
    for (std::size_t i = 0; i < t.size(); ++i) row(out, {t[i], R[i]});
    return out;
}

std::string polyline_interface_csv(const std::vector<double>& t, const std::vector<PolylineInterface>& g) {
    std::string out = "t,vertex_index,x,y\n";
    for (std::size_t k = 0; k < t.size(); ++k) {
        for (std::size_t i = 0; i < g[k].vertices.size(); ++i) {
            out += format_number(t[k]) + ',' + std::to_string(i) + ',';
            out += format_number(g[k].vertices[i].x) + ',' + format_number(g[k].vertices[i].y) + '\n';
        }
    }
    return out;
}

std::string report_csv(const SweepResult& r) {
    std::string out = "eps,t0,T,E_ii_u,E_ii_v,E_iii_u,E_iii_v,dH_max,eta_sup,theta_sup,A1_fit,A2_fit,A3_fit\n";
    for (const auto& e : r.reports) {
        if (!e.failure.empty()) continue;
        row(out, {e.epsilon, e.t0, e.T, e.E_ii_u, e.E_ii_v, e.E_iii_u, e.E_iii_v, e.dH_max, e.eta_sup, e.theta_sup,
                  e.A1_fit, e.A2_fit, e.A3_fit});
    }
    return out;
}

std::string rate_summary(const SweepResult& r) {
    nlohmann::ordered_json j;
    j["hausdorff_fit"] = {{"valid", r.hausdorff_fit.valid},
                          {"exponent_q", r.hausdorff_fit.exponent},
                          {"constant_C", r.hausdorff_fit.constant}};
    auto runs = nlohmann::ordered_json::array();
    for (const auto& e : r.reports) {
        nlohmann::ordered_json row;
        row["eps"] = e.epsilon;
        row["resolved"] = e.resolved;
        row["status"] = e.failure.empty() ? "ok" : "failed";
        if (!e.failure.empty()) row["failure"] = e.failure;
        row["probes"] = e.probes;
        row["grad_eta_sup"] = e.grad_eta_sup;
        row["sandwich_violations"] = e.sandwich_violations;
        runs.push_back(row);
    }
    j["runs"] = runs;
    return j.dump(2) + "\n";
}

std::string residual_csv(const std::vector<TranslateFit>& fits) {
    std::string out = "t,theta,residual\n";
    for (const auto& f : fits) row(out, {f.t, f.theta, f.residual});
    return out;
}

}  // namespace lvfront
