// recsim command line: single runs, parameter sweeps and function curves.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "recsim/config_io.hpp"
#include "recsim/engine.hpp"
#include "recsim/errors.hpp"
#include "recsim/experiments.hpp"
#include "recsim/simd/kernels.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;

struct SimulateArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    bool trace = false;
    std::size_t workers = 1;
};

struct SweepArgs {
    std::string preset;
    std::string config;
    std::optional<std::size_t> reps;
    std::optional<double> lambda;
    std::optional<std::uint64_t> seed;
    std::size_t workers = 0;
    std::string out;
    bool quiet = false;
};

int do_simulate(const SimulateArgs& args) {
    recsim::SimulationConfig config = recsim::simulation_config_from_json(recsim::load_json_file(args.config));
    if (args.seed) config.seed = *args.seed;
    if (args.trace) {
        config.trace.recommendations = true;
        if (config.trace.snapshot_interval == 0) config.trace.snapshot_interval = 10;
    }
    config.validate();
    const recsim::RunResult result = recsim::run(config, args.workers);
    if (!args.out.empty()) {
        recsim::ArtifactFlags flags;
        flags.recommendations = args.trace;
        recsim::emit_run_artifacts(config, result, args.out, flags);
    }
    std::cout << recsim::to_json(result.metrics).dump(2) << '\n';
    return 0;
}

int do_sweep(const SweepArgs& args) {
    recsim::SweepSpec spec = args.preset.empty()
                                 ? recsim::sweep_spec_from_json(recsim::load_json_file(args.config))
                                 : recsim::preset_by_name(args.preset);
    if (args.reps) spec.replications = *args.reps;
    if (args.lambda) spec.lambda = *args.lambda;
    if (args.seed) spec.master_seed = *args.seed;
    spec.validate();

    recsim::SweepOptions options;
    options.workers = args.workers > 0 ? args.workers : std::max(1u, std::thread::hardware_concurrency());
    options.out_dir = args.out.empty() ? std::filesystem::path("sweep-" + spec.name) : std::filesystem::path(args.out);
    if (!args.quiet) {
        options.progress = [](std::size_t done, std::size_t total) {
            if (done == total || done % 50 == 0) std::fprintf(stderr, "\r%zu/%zu runs", done, total);
            if (done == total) std::fputc('\n', stderr);
        };
    }

    const recsim::SweepReport report = recsim::run_sweep(spec, options);
    std::fprintf(stderr, "%s: %zu runs executed, %zu restored, %zu failed points -> %s\n", spec.name.c_str(),
                 report.runs_executed, report.runs_skipped, report.failed.size(), options.out_dir.c_str());
    for (const auto& f : report.failed) std::fprintf(stderr, "  failed %s: %s\n", f.key.c_str(), f.error.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-loop recommender / opinion dynamics simulator"};
    app.require_subcommand(1);
    std::string kernel = "auto";
    app.add_option("--kernel", kernel, "Numeric kernel: auto, scalar or avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    app.set_version_flag("--version", recsim::code_version());

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Run one simulation");
    simulate->add_option("--config", sim.config, "Simulation config JSON")->required();
    simulate->add_option("--seed", sim.seed, "Override the config seed");
    simulate->add_option("--out", sim.out, "Directory for per-run CSV/JSON artifacts");
    simulate->add_flag("--trace", sim.trace, "Record recommendation trace and opinion snapshots every 10 steps");
    simulate->add_option("--workers", sim.workers, "Threads within the run")->check(CLI::PositiveNumber);

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Run a replicated parameter sweep");
    auto* preset = sweep->add_option("--preset", sw.preset, "Named grid")
                       ->check(CLI::IsMember({"rq1", "rq2", "rq2-ext", "rq3-omega", "rq3-heatmap"}));
    auto* config = sweep->add_option("--config", sw.config, "Sweep config JSON");
    preset->excludes(config);
    config->excludes(preset);
    sweep->add_option("--reps", sw.reps, "Replications per grid point")->check(CLI::PositiveNumber);
    sweep->add_option("--lambda", sw.lambda, "Susceptibility for every grid point")->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--seed", sw.seed, "Master seed");
    sweep->add_option("--workers", sw.workers, "Concurrent runs (default: hardware threads)");
    sweep->add_option("--out", sw.out, "Output directory (default: sweep-<name>)");
    sweep->add_flag("--quiet", sw.quiet, "No progress output");

    std::string curves_out;
    auto* curves = app.add_subcommand("curves", "Write engagement, watch-rate and watch-score curve tables");
    curves->add_option("--out", curves_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (kernel != "auto") recsim::simd::select_isa(*recsim::simd::parse_isa(kernel));
        if (*simulate) return do_simulate(sim);
        if (*sweep) {
            if (sw.preset.empty() && sw.config.empty()) throw recsim::ConfigError("sweep needs --preset or --config");
            return do_sweep(sw);
        }
        if (*curves) {
            recsim::write_function_curves(curves_out);
            return 0;
        }
    } catch (const recsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const recsim::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return 0;
}
