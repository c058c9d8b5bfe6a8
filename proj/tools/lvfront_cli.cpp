#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "lvfront/config.hpp"
#include "lvfront/csv.hpp"
#include "lvfront/error.hpp"
#include "lvfront/pipeline.hpp"

using namespace lvfront;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;
constexpr int exit_partial = 4;

struct CommonArgs {
    std::string config;
    std::string out = "out";
    unsigned workers = 1;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config, "Experiment config (INI); built-in defaults when omitted");
    sub->add_option("--out", args.out, "Output directory")->capture_default_str();
    sub->add_option("--workers", args.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--seed", args.seed, "Override run.seed");
}

ExperimentConfig load_config(const CommonArgs& args) {
    ExperimentConfig cfg = args.config.empty() ? ExperimentConfig{} : ExperimentConfig::load(args.config);
    if (args.seed) cfg.seed = *args.seed;
    cfg.validate();
    return cfg;
}

std::string out_path(const CommonArgs& args, const std::string& name) {
    return (std::filesystem::path(args.out) / name).string();
}

void prepare_out(const CommonArgs& args, const ExperimentConfig& cfg) {
    std::filesystem::create_directories(args.out);
    write_text(out_path(args, "manifest.ini"), cfg.manifest());
}

std::string indexed(const char* stem, std::size_t i, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%03zu.%s", stem, i, ext);
    return buf;
}

std::vector<double> even_times(double t_end, int probes) {
    std::vector<double> t;
    for (int i = 0; i <= probes; ++i) t.push_back(t_end * i / probes);
    return t;
}

int cmd_wave(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    prepare_out(args, cfg);
    std::optional<WaveBundle> bundle;
    try {
        bundle = prepare_wave(cfg);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NewtonStall) throw;
        // No standing wave: still report how fast a front moves.
        const Kinetics kin(cfg.kinetics);
        const SpeedEstimate sp = estimate_wave_speed(kin, HFunction(separatrix_for(cfg, kin)), cfg.wave.speed_horizon);
        nlohmann::ordered_json j;
        j["speed"] = sp.speed;
        j["failure"] = e.what();
        write_text(out_path(args, "speed.json"), j.dump(2) + "\n");
        std::cerr << e.what() << "\nwave: no standing wave, estimated speed " << sp.speed << "\n";
        return exit_numerical;
    }
    const WaveBundle& b = *bundle;
    write_text(out_path(args, "wave.csv"), wave_csv(*b.wave));
    const SpeedEstimate sp = estimate_wave_speed(b.kin, b.h, cfg.wave.speed_horizon);
    nlohmann::ordered_json j;
    j["speed"] = sp.speed;
    j["newton_iterations"] = b.wave->newton_iterations;
    j["residual"] = b.wave->residual;
    j["phase_shift"] = b.wave->phase_shift;
    write_text(out_path(args, "speed.json"), j.dump(2) + "\n");
    std::cout << "wave: " << b.wave->size() << " nodes, residual " << b.wave->residual << ", speed " << sp.speed
              << "\n";
    return exit_ok;
}

int cmd_separatrix(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    prepare_out(args, cfg);
    const Kinetics kin(cfg.kinetics);
    const SeparatrixCurve c = separatrix_for(cfg, kin);
    write_text(out_path(args, "separatrix.csv"), separatrix_csv(c));
    std::cout << "separatrix: " << c.samples.size() << " samples\n";
    return exit_ok;
}

int cmd_simulate(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    prepare_out(args, cfg);
    const WaveBundle b = prepare_wave(cfg);
    const double eps = cfg.initial.epsilon;
    const GridSpec grid = make_grid(cfg, eps);
    const Coefficients coeff = make_coefficients(cfg, grid);
    const InitialData data =
        build_initial_data(cfg.initial.kind, grid, initial_front(cfg), coeff, b.kin, *b.wave, b.h, eps, cfg.initial.width);
    SolverConfig sc;
    sc.dt = cfg.solver.dt;
    sc.scheme = cfg.solver.scheme;
    sc.t_end = cfg.solver.t_end;
    sc.face_mean = cfg.solver.face_mean;
    sc.workers = args.workers;
    const auto probes = even_times(cfg.solver.t_end, cfg.metrics.probes);
    const auto snaps = RdSolver(grid, coeff, b.kin, sc).simulate(data.field, probes);
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        write_text(out_path(args, indexed("snapshot", i, "csv")), snapshot_csv(snaps[i], grid));
        write_text(out_path(args, indexed("snapshot", i, "json")), snapshot_sidecar(snaps[i], grid, cfg.kinetics));
    }
    std::cout << "simulate: " << snaps.size() << " snapshots, A0 " << data.A0 << " (layer " << data.A0_layer << ")\n";
    return exit_ok;
}

int cmd_interface(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    prepare_out(args, cfg);
    const GridSpec grid = make_grid(cfg, cfg.initial.epsilon);
    const Coefficients coeff = make_coefficients(cfg, grid);
    const auto times = even_times(cfg.solver.t_end, cfg.metrics.probes);
    const auto fronts = limit_interface(cfg, coeff, times);
    std::string csv;
    if (std::holds_alternative<CircleFront>(fronts.front())) {
        std::vector<double> R;
        for (const auto& f : fronts) R.push_back(std::get<CircleFront>(f).R);
        csv = radial_interface_csv(times, R);
    } else if (std::holds_alternative<PolylineInterface>(fronts.front())) {
        std::vector<PolylineInterface> g;
        for (const auto& f : fronts) g.push_back(std::get<PolylineInterface>(f));
        csv = polyline_interface_csv(times, g);
    } else {
        std::vector<PolylineInterface> g;
        for (const auto& f : fronts) {
            PolylineInterface p;
            for (double x : std::get<PointSetFront>(f).points) p.vertices.push_back({x, 0.0});
            g.push_back(p);
        }
        csv = polyline_interface_csv(times, g);
    }
    write_text(out_path(args, "interface.csv"), csv);
    std::cout << "interface: " << times.size() << " samples\n";
    return exit_ok;
}

int cmd_converge(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    prepare_out(args, cfg);
    const SweepResult r = convergence_sweep(cfg, cfg.metrics.eps_list, args.workers);
    write_text(out_path(args, "report.csv"), report_csv(r));
    write_text(out_path(args, "rates.json"), rate_summary(r));
    std::size_t failed = 0;
    for (const auto& e : r.reports) {
        if (!e.failure.empty()) {
            ++failed;
            std::cerr << "eps " << e.epsilon << ": " << e.failure << "\n";
        }
    }
    std::cout << "converge: " << r.reports.size() - failed << "/" << r.reports.size() << " runs ok";
    if (r.hausdorff_fit.valid) std::cout << ", q = " << r.hausdorff_fit.exponent;
    std::cout << "\n";
    if (failed == 0) return exit_ok;
    return failed == r.reports.size() ? exit_numerical : exit_partial;
}

int cmd_liouville(const CommonArgs& args) {
    const ExperimentConfig cfg = load_config(args);
    prepare_out(args, cfg);
    const LiouvilleRun run = liouville_suite(cfg, args.workers);
    nlohmann::ordered_json j;
    j["seeds"] = run.series.size();
    j["comparison_pairs"] = run.comparison_pairs;
    j["comparison_max_violation"] = run.comparison_max_violation;
    auto runs = nlohmann::ordered_json::array();
    std::size_t failed = 0;
    for (std::size_t i = 0; i < run.series.size(); ++i) {
        nlohmann::ordered_json r;
        r["seed_index"] = i;
        if (!run.failures[i].empty()) {
            ++failed;
            r["failure"] = run.failures[i];
        } else {
            write_text(out_path(args, indexed("residual", i, "csv")), residual_csv(run.series[i]));
            r["final_theta"] = run.series[i].back().theta;
            r["final_residual"] = run.series[i].back().residual;
        }
        runs.push_back(r);
    }
    j["runs"] = runs;
    write_text(out_path(args, "summary.json"), j.dump(2) + "\n");
    std::cout << "liouville: " << run.series.size() - failed << "/" << run.series.size()
              << " seeds ok, comparison max violation " << run.comparison_max_violation << "\n";
    if (failed == 0) return exit_ok;
    return failed == run.series.size() ? exit_numerical : exit_partial;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sharp-interface lab for the Lotka-Volterra competition-diffusion system"};
    app.require_subcommand(1);
    CommonArgs args;
    struct Entry {
        const char* name;
        const char* help;
        int (*fn)(const CommonArgs&);
    };
    const Entry entries[] = {
        {"wave", "Standing wave profile and speed estimate", cmd_wave},
        {"separatrix", "Separatrix of the kinetics", cmd_separatrix},
        {"simulate", "Reaction-diffusion run with snapshots", cmd_simulate},
        {"interface", "Limit interface motion", cmd_interface},
        {"converge", "Epsilon convergence sweep", cmd_converge},
        {"liouville", "Sandwich relaxation and comparison fuzz", cmd_liouville},
    };
    int (*selected)(const CommonArgs&) = nullptr;
    for (const auto& e : entries) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        add_common(sub, args);
        sub->callback([&selected, fn = e.fn] { selected = fn; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }
    try {
        return selected(args);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return e.kind() == ErrorKind::Config || e.kind() == ErrorKind::InvalidParams ? exit_config : exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    }
}
