#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "lvfront/config.hpp"
#include "lvfront/interface.hpp"
#include "lvfront/liouville.hpp"
#include "lvfront/validity_metrics.hpp"

namespace lvfront {

/// Kinetics, separatrix classifier and standing wave shared by all runs of a config.
struct WaveBundle {
    Kinetics kin;
    HFunction h;
    std::shared_ptr<const WaveProfile> wave;
};

/// Builds the bundle; `wave` may be overridden (e.g. a shorter domain).
WaveBundle prepare_wave(const ExperimentConfig& cfg);
WaveBundle prepare_wave(const ExperimentConfig& cfg, const WaveSolveOptions& wave_opt);

WaveSolveOptions wave_options(const ExperimentConfig& cfg);
SeparatrixCurve separatrix_for(const ExperimentConfig& cfg, const Kinetics& kin);

/// Grid for the given epsilon (grid.dx, or grid.dx_over_eps * eps when dx = 0).
GridSpec make_grid(const ExperimentConfig& cfg, double epsilon);
Coefficients make_coefficients(const ExperimentConfig& cfg, const GridSpec& grid);
Front initial_front(const ExperimentConfig& cfg);
DrivingConstant driving_constant(const ExperimentConfig& cfg);

/// Limit interface evolved from the initial front, sampled at `times` (non-decreasing, >= 0).
std::vector<Front> limit_interface(const ExperimentConfig& cfg, const Coefficients& c, std::span<const double> times);

/// One full epsilon run: data -> simulate -> extract -> metrics. Errors propagate.
ErrorReport run_epsilon(const ExperimentConfig& cfg, const WaveBundle& bundle, double epsilon, unsigned workers = 1);

/// Runs every epsilon (concurrently when workers > 1); per-epsilon failures are
/// recorded in the report's `failure` field and the sweep continues. The power
/// fit uses only resolved, successful runs.
SweepResult convergence_sweep(const ExperimentConfig& cfg, const std::vector<double>& eps_list, unsigned workers = 1);

struct LiouvilleRun {
    std::vector<std::vector<TranslateFit>> series;  // one per seed
    std::vector<std::string> failures;              // empty string on success
    double comparison_max_violation = 0.0;
    std::size_t comparison_pairs = 0;
};

/// Sandwich seeds (random blends from cfg.seed) and nested-front comparison pairs.
LiouvilleRun liouville_suite(const ExperimentConfig& cfg, unsigned workers = 1);

/// Deterministic per-run seed derived from the config seed, a run index and a stream tag.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, std::uint64_t stream);

/// Random nested pair of 1D well-prepared data on [-1, 1], drawn from `rng_seed`.
struct ComparisonPair {
    GridSpec grid;
    Field first, second;
};
ComparisonPair nested_pair(const WaveBundle& bundle, std::uint64_t rng_seed);

}  // namespace lvfront
