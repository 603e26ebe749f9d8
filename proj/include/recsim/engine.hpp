#pragma once

// One closed-loop simulation: recommend -> watch -> engage -> update opinion
// -> record, for every user at every timestep, then commit the timestep's
// likes to the virality window.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "recsim/metrics.hpp"
#include "recsim/model.hpp"
#include "recsim/population.hpp"
#include "recsim/recommender.hpp"

namespace recsim {

struct TraceOptions {
    bool recommendations = false;      // n * tau content indices
    std::size_t snapshot_interval = 0;  // 0: opinions at t = 0 and t = tau only

    friend bool operator==(const TraceOptions&, const TraceOptions&) = default;
};

struct SimulationConfig {
    std::size_t users = 500;
    std::size_t steps = 1000;
    std::size_t contents = 21;
    RecommenderParams recommender{};
    double rationality = 9.0;     // beta, homogeneous
    double susceptibility = 0.9;  // lambda, homogeneous
    ModelParams model{};
    InitialDistributionSpec initial = InitialDistributionSpec::ndic();
    std::uint64_t seed = 1;
    TraceOptions trace{};

    /// Throws ConfigError naming the first violated constraint.
    void validate() const;
};

struct OpinionSnapshot {
    std::size_t step;
    std::vector<double> opinions;

    friend bool operator==(const OpinionSnapshot&, const OpinionSnapshot&) = default;
};

struct RunResult {
    std::vector<double> initial_opinions;
    std::vector<double> final_opinions;
    std::vector<std::uint64_t> cumulative_likes;  // per content
    std::vector<std::uint32_t> step_likes;        // total likes per timestep
    std::uint64_t total_likes = 0;
    std::uint64_t total_dislikes = 0;
    std::uint64_t total_neutral = 0;
    double total_watch = 0.0;
    MetricSet metrics;
    std::vector<std::uint16_t> recommendation_trace;  // [t * n + i] when enabled
    std::vector<OpinionSnapshot> snapshots;

    friend bool operator==(const RunResult&, const RunResult&) = default;
};

/// Replaces the sampled engagement of `user` (test hook).
using EngagementOverride = std::function<Engagement(std::size_t user, Engagement sampled)>;

/**
 * Simulation state advanced one timestep at a time.
 *
 * User i draws from its own counter-based stream (seed, i) at block t, so
 * results do not depend on how users are split across workers.
 */
class Simulation {
public:
    explicit Simulation(SimulationConfig config, std::size_t workers = 1);

    const SimulationConfig& config() const noexcept { return config_; }
    std::size_t current_step() const noexcept { return step_; }
    bool finished() const noexcept { return step_ >= config_.steps; }

    /// Advances one timestep. The window seen by step t holds only steps before t.
    void step();

    /// Distribution used to pick the next recommendation for `user` given the current state.
    void recommendation_distribution(std::size_t user, std::span<double> out) const;

    const ContentCatalog& catalog() const noexcept { return catalog_; }
    const InteractionLedger& ledger() const noexcept { return ledger_; }
    const ViralityWindow& window() const noexcept { return window_; }
    std::span<const double> opinions() const noexcept { return opinions_; }
    std::span<const double> initial_opinions() const noexcept { return initial_; }
    /// Like vectors of every committed step, oldest first.
    std::span<const std::uint32_t> step_likes() const noexcept { return step_likes_; }
    std::span<const std::uint64_t> cumulative_likes() const noexcept { return cumulative_likes_; }

    void set_engagement_override(EngagementOverride override) { override_ = std::move(override); }
    void set_workers(std::size_t workers);

    /// Runs the remaining steps and assembles the result.
    RunResult finish();

private:
    struct WorkerScratch {
        std::vector<std::uint32_t> staged_likes;
        std::vector<double> payoffs;
        std::vector<double> probabilities;
        std::uint64_t likes = 0;
        std::uint64_t dislikes = 0;
        std::uint64_t neutral = 0;
    };

    void advance_users(std::size_t begin, std::size_t end, WorkerScratch& scratch);
    void take_snapshot();

    SimulationConfig config_;
    std::size_t workers_;
    ContentCatalog catalog_;
    InteractionLedger ledger_;
    ViralityWindow window_;
    std::vector<double> initial_;
    std::vector<double> opinions_;
    std::vector<double> watch_totals_;  // per user, accumulated in time order
    std::vector<double> virality_;      // C for the step in progress
    std::vector<std::uint64_t> cumulative_likes_;
    std::vector<std::uint32_t> step_likes_;  // steps * k
    std::vector<std::uint32_t> step_like_totals_;
    std::vector<std::uint16_t> trace_;
    std::vector<OpinionSnapshot> snapshots_;
    std::vector<WorkerScratch> scratch_;
    std::uint64_t likes_ = 0;
    std::uint64_t dislikes_ = 0;
    std::uint64_t neutral_ = 0;
    std::size_t step_ = 0;
    EngagementOverride override_;
};

RunResult run(const SimulationConfig& config, std::size_t workers = 1);

/// Fills the headline metrics from the finished state.
MetricSet compute_metrics(const SimulationConfig& config, std::span<const double> initial,
                          std::span<const double> final_opinions, std::span<const std::uint64_t> cumulative_likes,
                          std::uint64_t total_likes, double total_watch);

}  // namespace recsim
