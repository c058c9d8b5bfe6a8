#include "lvfront/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "lvfront/error.hpp"
#include "lvfront/expr.hpp"

namespace lvfront {

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    std::string out = s.substr(b, e - b + 1);
    if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
    return out;
}

std::string fmt(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double to_double(const std::string& key, const std::string& s) {
    const std::string t = trim(s);
    double x = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), x);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(x)) {
        config_error(key + ": expected a number, got '" + s + "'");
    }
    return x;
}

long long to_integer(const std::string& key, const std::string& s) {
    const std::string t = trim(s);
    long long x = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), x);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        config_error(key + ": expected an integer, got '" + s + "'");
    }
    return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& s) {
    const std::string t = trim(s);
    std::uint64_t x = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), x);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        config_error(key + ": expected an unsigned integer, got '" + s + "'");
    }
    return x;
}

std::vector<double> to_list(const std::string& key, const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(trim(s));
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, item));
    return out;
}

std::string list_str(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + fmt(xs[i]);
    return out;
}

template <class E>
E to_enum(const std::string& key, const std::string& s, std::initializer_list<std::pair<const char*, E>> table) {
    const std::string t = trim(s);
    std::string allowed;
    for (const auto& [name, value] : table) {
        if (t == name) return value;
        allowed += (allowed.empty() ? "" : "|") + std::string(name);
    }
    config_error(key + ": expected one of " + allowed + ", got '" + s + "'");
}

template <class E>
std::string enum_str(E value, std::initializer_list<std::pair<const char*, E>> table) {
    for (const auto& [name, v] : table) {
        if (v == value) return name;
    }
    return "?";
}

const std::initializer_list<std::pair<const char*, Geometry>> geometry_names = {
    {"line", Geometry::Line}, {"radial", Geometry::Radial}, {"rect", Geometry::Rect2D}};
const std::initializer_list<std::pair<const char*, Scheme>> scheme_names = {{"explicit", Scheme::ExplicitEuler},
                                                                            {"imex", Scheme::IMEX}};
const std::initializer_list<std::pair<const char*, FaceMean>> mean_names = {{"arithmetic", FaceMean::Arithmetic},
                                                                            {"harmonic", FaceMean::Harmonic}};
const std::initializer_list<std::pair<const char*, FrontShape>> shape_names = {
    {"point", FrontShape::Point}, {"circle", FrontShape::Circle}, {"ellipse", FrontShape::Ellipse}};
const std::initializer_list<std::pair<const char*, InitialKind>> initial_names = {
    {"stepped", InitialKind::SteppedSmooth}, {"well_prepared", InitialKind::WellPrepared}};
const std::initializer_list<std::pair<const char*, WaveSeed>> seed_names = {{"tanh", WaveSeed::Tanh},
                                                                            {"piecewise", WaveSeed::PiecewiseLinear}};

struct Key {
    const char* name;
    std::function<void(ExperimentConfig&, const std::string&)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

#define LV_DOUBLE(NAME, FIELD)                                                                        \
    Key {                                                                                             \
        NAME, [](ExperimentConfig& c, const std::string& s) { c.FIELD = to_double(NAME, s); },        \
            [](const ExperimentConfig& c) { return fmt(c.FIELD); }                                    \
    }
#define LV_INT(NAME, FIELD)                                                                                  \
    Key {                                                                                                    \
        NAME, [](ExperimentConfig& c, const std::string& s) { c.FIELD = static_cast<int>(to_integer(NAME, s)); }, \
            [](const ExperimentConfig& c) { return std::to_string(c.FIELD); }                                \
    }
#define LV_LIST(NAME, FIELD)                                                                  \
    Key {                                                                                     \
        NAME, [](ExperimentConfig& c, const std::string& s) { c.FIELD = to_list(NAME, s); }, \
            [](const ExperimentConfig& c) { return list_str(c.FIELD); }                       \
    }
#define LV_STRING(NAME, FIELD)                                                         \
    Key {                                                                              \
        NAME, [](ExperimentConfig& c, const std::string& s) { c.FIELD = trim(s); },   \
            [](const ExperimentConfig& c) { return c.FIELD; }                          \
    }
#define LV_ENUM(NAME, FIELD, TABLE)                                                                \
    Key {                                                                                          \
        NAME, [](ExperimentConfig& c, const std::string& s) { c.FIELD = to_enum(NAME, s, TABLE); }, \
            [](const ExperimentConfig& c) { return enum_str(c.FIELD, TABLE); }                     \
    }

const std::vector<Key>& keys() {
    static const std::vector<Key> table = {
        LV_DOUBLE("kinetics.D1", kinetics.D1),
        LV_DOUBLE("kinetics.D2", kinetics.D2),
        LV_DOUBLE("kinetics.R1", kinetics.R1),
        LV_DOUBLE("kinetics.R2", kinetics.R2),
        LV_DOUBLE("kinetics.a1", kinetics.a1),
        LV_DOUBLE("kinetics.b1", kinetics.b1),
        LV_DOUBLE("kinetics.a2", kinetics.a2),
        LV_DOUBLE("kinetics.b2", kinetics.b2),
        LV_ENUM("grid.geometry", grid.geometry, geometry_names),
        LV_INT("grid.dim", grid.dim),
        LV_LIST("grid.extent", grid.extent),
        LV_DOUBLE("grid.dx", grid.dx),
        LV_DOUBLE("grid.dx_over_eps", grid.dx_over_eps),
        LV_STRING("coeff.k_expr", coeff.k_expr),
        LV_STRING("coeff.h_expr", coeff.h_expr),
        LV_DOUBLE("solver.dt", solver.dt),
        LV_ENUM("solver.scheme", solver.scheme, scheme_names),
        LV_DOUBLE("solver.t_end", solver.t_end),
        LV_ENUM("solver.face_mean", solver.face_mean, mean_names),
        Key{"interface.C",
            [](ExperimentConfig& c, const std::string& s) { c.interface.C = to_double("interface.C", s); },
            [](const ExperimentConfig& c) { return c.interface.C ? fmt(*c.interface.C) : std::string("unset"); }},
        LV_ENUM("interface.shape", interface.shape, shape_names),
        Key{"interface.center",
            [](ExperimentConfig& c, const std::string& s) {
                const auto xs = to_list("interface.center", s);
                if (xs.size() != 2) config_error("interface.center: expected two numbers x,y");
                c.interface.center = {xs[0], xs[1]};
            },
            [](const ExperimentConfig& c) { return list_str({c.interface.center.x, c.interface.center.y}); }},
        LV_DOUBLE("interface.radius", interface.radius),
        LV_DOUBLE("interface.semi_x", interface.semi_x),
        LV_DOUBLE("interface.semi_y", interface.semi_y),
        LV_LIST("interface.points", interface.points),
        LV_INT("interface.vertices", interface.vertices),
        LV_DOUBLE("interface.dt", interface.dt),
        LV_ENUM("initial.kind", initial.kind, initial_names),
        LV_DOUBLE("initial.width", initial.width),
        LV_DOUBLE("initial.epsilon", initial.epsilon),
        LV_DOUBLE("wave.L", wave.L),
        LV_INT("wave.n", wave.n),
        LV_DOUBLE("wave.tol", wave.tol),
        LV_ENUM("wave.seed", wave.seed, seed_names),
        LV_DOUBLE("wave.speed_horizon", wave.speed_horizon),
        LV_DOUBLE("separatrix.tol", separatrix.tol),
        LV_DOUBLE("separatrix.u_lo", separatrix.u_lo),
        LV_DOUBLE("separatrix.u_hi", separatrix.u_hi),
        LV_LIST("metrics.eps_list", metrics.eps_list),
        LV_DOUBLE("metrics.t0_factor", metrics.t0_factor),
        LV_INT("metrics.probes", metrics.probes),
        LV_DOUBLE("metrics.band", metrics.band),
        LV_INT("liouville.seeds", liouville.seeds),
        LV_DOUBLE("liouville.a", liouville.a),
        LV_DOUBLE("liouville.b", liouville.b),
        LV_DOUBLE("liouville.horizon", liouville.horizon),
        LV_INT("liouville.probes", liouville.probes),
        LV_DOUBLE("liouville.half_length", liouville.half_length),
        LV_INT("liouville.n", liouville.n),
        LV_INT("liouville.comparison_pairs", liouville.comparison_pairs),
        LV_DOUBLE("liouville.comparison_t_end", liouville.comparison_t_end),
        Key{"run.seed", [](ExperimentConfig& c, const std::string& s) { c.seed = to_u64("run.seed", s); },
            [](const ExperimentConfig& c) { return std::to_string(c.seed); }},
    };
    return table;
}

#undef LV_DOUBLE
#undef LV_INT
#undef LV_LIST
#undef LV_STRING
#undef LV_ENUM

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        config_error(std::string("malformed config: ") + e.what());
    }
    ExperimentConfig cfg;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) config_error("key '" + section + "' must live inside a [section]");
        for (const auto& [name, value] : body) {
            const std::string full = section + "." + name;
            const Key* key = nullptr;
            for (const auto& k : keys()) {
                if (full == k.name) key = &k;
            }
            if (!key) config_error("unknown config key '" + full + "'");
            key->set(cfg, value.data());
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot open config file '" + path + "'");
    return parse(in);
}

bool ExperimentConfig::heterogeneous() const {
    return !Expression(coeff.k_expr).is_constant() || !Expression(coeff.h_expr).is_constant();
}

void ExperimentConfig::validate() const {
    try {
        Kinetics kin(kinetics);
    } catch (const Error& e) {
        config_error(std::string("kinetics: ") + e.what());
    }
    if (heterogeneous() && !interface.C) {
        config_error(
            "interface.C is required when k or h is non-constant: the driving constant is not derived from "
            "the kinetics (see README, 'Driving constant C')");
    }
    const std::size_t want = grid.geometry == Geometry::Line ? 2 : grid.geometry == Geometry::Radial ? 1 : 4;
    if (grid.extent.size() != want) {
        config_error("grid.extent: expected " + std::to_string(want) + " values for " + to_string(grid.geometry));
    }
    if (grid.geometry == Geometry::Radial && (grid.dim < 1 || grid.extent[0] <= 0.0)) {
        config_error("grid: radial grids need dim >= 1 and r_max > 0");
    }
    if (grid.geometry == Geometry::Line && !(grid.extent[0] < grid.extent[1])) config_error("grid.extent: need x0 < x1");
    if (grid.geometry == Geometry::Rect2D && !(grid.extent[0] < grid.extent[1] && grid.extent[2] < grid.extent[3])) {
        config_error("grid.extent: need x0 < x1 and y0 < y1");
    }
    if (grid.dx < 0.0 || (grid.dx == 0.0 && !(grid.dx_over_eps > 0.0))) {
        config_error("grid: need dx > 0 or dx_over_eps > 0");
    }
    if (solver.dt < 0.0 || !(solver.t_end > 0.0)) config_error("solver: need dt >= 0 and t_end > 0");
    if (metrics.eps_list.empty()) config_error("metrics.eps_list must not be empty");
    for (std::size_t i = 0; i < metrics.eps_list.size(); ++i) {
        if (!(metrics.eps_list[i] > 0.0 && metrics.eps_list[i] < 1.0)) config_error("metrics.eps_list: need 0 < eps < 1");
        if (i && !(metrics.eps_list[i] < metrics.eps_list[i - 1])) config_error("metrics.eps_list must be strictly decreasing");
    }
    if (metrics.probes < 1 || metrics.t0_factor < 0.0 || !(metrics.band > 0.0)) {
        config_error("metrics: need probes >= 1, t0_factor >= 0, band > 0");
    }
    if (!(initial.width > 0.0) || !(initial.epsilon > 0.0 && initial.epsilon < 1.0)) {
        config_error("initial: need width > 0 and 0 < epsilon < 1");
    }
    if (!(wave.L > 0.0) || wave.n < 400 || wave.n % 2 || !(wave.tol > 0.0)) {
        config_error("wave: need L > 0, even n >= 400, tol > 0");
    }
    if (!(separatrix.tol > 0.0) || !(separatrix.u_lo >= 0.0)) config_error("separatrix: need tol > 0, u_lo >= 0");
    if (interface.vertices < 64 || interface.dt < 0.0) config_error("interface: need vertices >= 64 and dt >= 0");
    switch (interface.shape) {
        case FrontShape::Point:
            if (grid.geometry != Geometry::Line || interface.points.empty()) {
                config_error("interface.shape = point needs a line grid and interface.points");
            }
            for (std::size_t i = 0; i < interface.points.size(); ++i) {
                const double p = interface.points[i];
                if (!(p > grid.extent[0] && p < grid.extent[1])) config_error("interface.points must lie inside the domain");
                if (i && !(p > interface.points[i - 1])) config_error("interface.points must be increasing");
            }
            break;
        case FrontShape::Circle:
        case FrontShape::Ellipse: {
            if (grid.geometry == Geometry::Line) config_error("1D grids need interface.shape = point");
            const double rx = interface.shape == FrontShape::Circle ? interface.radius : interface.semi_x;
            const double ry = interface.shape == FrontShape::Circle ? interface.radius : interface.semi_y;
            if (!(rx > 0.0 && ry > 0.0)) config_error("interface: radii must be positive");
            if (grid.geometry == Geometry::Radial) {
                if (interface.shape != FrontShape::Circle) config_error("radial grids need interface.shape = circle");
                if (interface.center.x != 0.0 || interface.center.y != 0.0) config_error("radial grids need a centred front");
                if (!(rx < grid.extent[0])) config_error("interface: the initial front must lie inside the domain");
            } else {
                const Point2 c = interface.center;
                if (!(c.x - rx > grid.extent[0] && c.x + rx < grid.extent[1] && c.y - ry > grid.extent[2] &&
                      c.y + ry < grid.extent[3])) {
                    config_error("interface: the initial front must lie inside the domain");
                }
            }
            break;
        }
    }
    if (liouville.seeds < 0 || liouville.comparison_pairs < 0 || liouville.probes < 1) {
        config_error("liouville: need seeds >= 0, comparison_pairs >= 0, probes >= 1");
    }
    if (!(liouville.a <= liouville.b) || !(liouville.horizon > 0.0) || !(liouville.half_length > 0.0) ||
        liouville.n < 400 || liouville.n % 2 || !(liouville.comparison_t_end > 0.0)) {
        config_error("liouville: need a <= b, horizon > 0, half_length > 0, even n >= 400, comparison_t_end > 0");
    }
}

std::string ExperimentConfig::manifest() const {
    std::string out;
    std::string section;
    for (const auto& k : keys()) {
        const std::string name = k.name;
        const auto dot = name.find('.');
        const std::string sec = name.substr(0, dot);
        if (sec != section) {
            out += (section.empty() ? "" : "\n") + ("[" + sec + "]\n");
            section = sec;
        }
        const std::string value = k.get(*this);
        if (name == "interface.C" && !interface.C) {
            out += "; interface.C = unset\n";
        } else {
            out += name.substr(dot + 1) + " = " + value + "\n";
        }
    }
    return out;
}

}  // namespace lvfront
