#pragma once

// Parameter-grid sweeps with replications: presets for the three experiment
// campaigns, deterministic per-run seeding, resumable execution, and
// canonical CSV/JSON outputs.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "recsim/engine.hpp"
#include "recsim/metrics.hpp"

namespace recsim {

struct GridPoint {
    InitialDistributionSpec distribution;
    double alpha;
    std::size_t contents;
    double omega;
    std::size_t delta;
    double lambda;

    /// Canonical text encoding; the only grid-point input to run seeds.
    std::string key() const;
};

struct SweepSpec {
    std::string name = "custom";
    SimulationConfig base{};
    std::vector<InitialDistributionSpec> distributions{InitialDistributionSpec::ndic(),
                                                      InitialDistributionSpec::bdic()};
    std::vector<double> alphas;
    std::vector<std::size_t> contents;
    std::vector<double> omegas;
    std::vector<std::size_t> deltas;
    double lambda = 0.9;
    std::size_t replications = 50;
    std::uint64_t master_seed = 20240101;

    /// Throws ConfigError when an axis is empty, a value repeats, or any grid point is an invalid config.
    void validate() const;

    /// Cartesian product in declaration order: distribution, alpha, k, omega, delta.
    std::vector<GridPoint> grid() const;
    std::size_t run_count() const;

    SimulationConfig config_for(const GridPoint& point, std::size_t replication) const;
};

/// Pure function of (master seed, point key, replication).
std::uint64_t run_seed(std::uint64_t master_seed, const std::string& point_key, std::size_t replication);

SweepSpec preset_rq1();
SweepSpec preset_rq2(bool extended = false);
SweepSpec preset_rq3_omega();
SweepSpec preset_rq3_heatmap();
/// "rq1" | "rq2" | "rq2-ext" | "rq3-omega" | "rq3-heatmap"; throws ConfigError otherwise.
SweepSpec preset_by_name(const std::string& name);

struct RawRow {
    std::string run_id;  // point key + ";rep=" + replication
    std::size_t replication;
    std::uint64_t seed;
    std::string distribution;
    double alpha;
    std::size_t contents;
    double omega;
    std::size_t delta;
    double lambda;
    double likes_pct;
    double wr_pct;
    double md_0;
    double md_tau;
    double mr_0;
    double mr_tau;
    std::optional<double> md_pct_change;
    std::optional<double> mr_pct_change;
    double dominance;
    double viral_stance;

    friend bool operator==(const RawRow&, const RawRow&) = default;
};

struct AggregateRow {
    std::string distribution;
    double alpha;
    std::size_t contents;
    double omega;
    std::size_t delta;
    double lambda;
    std::optional<AggregateStat> likes_pct;
    std::optional<AggregateStat> wr_pct;
    std::optional<AggregateStat> md_tau;
    std::optional<AggregateStat> mr_tau;
    std::optional<AggregateStat> md_pct_change;
    std::optional<AggregateStat> mr_pct_change;
    std::optional<AggregateStat> dominance;
    double viral_stance_mode;
    std::size_t rep_count;
};

struct ResultsTable {
    std::vector<RawRow> raw;              // canonical order
    std::vector<AggregateRow> aggregate;  // canonical order
};

struct FailedPoint {
    std::string key;
    std::string error;
};

struct SweepReport {
    ResultsTable table;
    std::size_t runs_executed = 0;
    std::size_t runs_skipped = 0;  // restored from a previous invocation
    std::vector<FailedPoint> failed;
};

struct SweepOptions {
    std::size_t workers = 1;
    std::filesystem::path out_dir;  // empty: keep results in memory only
    std::function<void(std::size_t done, std::size_t total)> progress;
    std::function<RunResult(const SimulationConfig&)> runner;  // default: run(config, 1)
};

RawRow make_raw_row(const GridPoint& point, std::size_t replication, std::uint64_t seed, const MetricSet& metrics);

/// Aggregates the rows of one grid point (rows must share the point).
AggregateRow aggregate_point(const GridPoint& point, const std::vector<RawRow>& rows);

/// Runs every (point, replication) not already recorded in out_dir, then
/// writes raw.csv, aggregate.csv and manifest.json there.
SweepReport run_sweep(const SweepSpec& spec, const SweepOptions& options);

std::string raw_csv(const std::vector<RawRow>& rows);
std::string aggregate_csv(const std::vector<AggregateRow>& rows);
std::vector<RawRow> parse_raw_csv(const std::string& text);

inline constexpr const char* kRawCsvHeader =
    "run_id,seed,distribution,alpha,k,omega,delta,lambda,likes_pct,wr_pct,md_0,md_tau,mr_0,mr_tau,"
    "md_pct_change,mr_pct_change,dominance,viral_stance";

// ---------------------------------------------------------------------------
// Per-run artifacts

struct ArtifactFlags {
    bool likes = true;
    bool opinions = true;
    bool recommendations = false;
};

/// likes_per_content.csv, opinions.csv, recommendations.csv (when traced) and summary.json in `dir`.
void emit_run_artifacts(const SimulationConfig& config, const RunResult& result, const std::filesystem::path& dir,
                        const ArtifactFlags& flags);

/// Function-curve tables for the engagement payoffs, watch rate and watch-time score.
void write_function_curves(const std::filesystem::path& dir);

std::string code_version();

}  // namespace recsim
