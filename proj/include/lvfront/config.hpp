#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lvfront/kinetics.hpp"
#include "lvfront/rd_solver.hpp"
#include "lvfront/traveling_wave.hpp"

namespace lvfront {

struct GridBlock {
    Geometry geometry = Geometry::Radial;
    int dim = 2;                       // radial dimension N
    std::vector<double> extent{1.0};   // line: x0,x1; radial: r_max; rect: x0,x1,y0,y1
    double dx = 0.0;                   // fixed spacing; 0 uses dx_over_eps * eps
    double dx_over_eps = 0.125;
};

struct CoeffBlock {
    std::string k_expr = "1";
    std::string h_expr = "1";
};

struct SolverBlock {
    double dt = 0.0;
    Scheme scheme = Scheme::ExplicitEuler;
    double t_end = 0.04;
    FaceMean face_mean = FaceMean::Arithmetic;
};

enum class FrontShape { Point, Circle, Ellipse };

struct InterfaceBlock {
    std::optional<double> C;  // required when k or h is non-constant
    FrontShape shape = FrontShape::Circle;
    Point2 center{0.0, 0.0};
    double radius = 0.5;
    double semi_x = 0.5, semi_y = 0.3;
    std::vector<double> points{0.0};  // 1D front positions
    int vertices = 256;
    double dt = 0.0;  // limit-flow step; 0 picks one from the vertex spacing
};

struct InitialBlock {
    InitialKind kind = InitialKind::SteppedSmooth;
    double width = 0.1;
    double epsilon = 0.05;  // used by the single-run subcommands
};

struct WaveBlock {
    double L = 60.0;
    int n = 4096;
    double tol = 1e-10;
    WaveSeed seed = WaveSeed::Tanh;
    double speed_horizon = 50.0;
};

struct SeparatrixBlock {
    double tol = 1e-7;
    double u_lo = 1e-3;
    double u_hi = 0.0;  // 0 means 2 R1/a1
};

struct MetricsBlock {
    std::vector<double> eps_list{0.1, 0.05, 0.025};
    double t0_factor = 10.0;  // t0 = t0_factor * eps^2 |log eps|
    int probes = 10;
    double band = 0.1;
};

struct LiouvilleBlock {
    int seeds = 50;
    double a = -2.0, b = 2.0;
    double horizon = 60.0;
    int probes = 12;
    double half_length = 30.0;
    int n = 600;
    int comparison_pairs = 50;
    double comparison_t_end = 0.02;
};

struct ExperimentConfig {
    KineticsParams kinetics;
    GridBlock grid;
    CoeffBlock coeff;
    SolverBlock solver;
    InterfaceBlock interface;
    InitialBlock initial;
    WaveBlock wave;
    SeparatrixBlock separatrix;
    MetricsBlock metrics;
    LiouvilleBlock liouville;
    std::uint64_t seed = 0;

    /// Parses the INI-style format; unknown keys and malformed values throw
    /// Error(Config). The result is validated.
    static ExperimentConfig parse(std::istream& in);
    static ExperimentConfig parse_string(const std::string& text);
    static ExperimentConfig load(const std::string& path);

    /// Throws Error(Config) on inconsistent settings (also checks bistability).
    void validate() const;

    bool heterogeneous() const;

    /// Every key with its resolved value, in the input format.
    std::string manifest() const;
};

}  // namespace lvfront
