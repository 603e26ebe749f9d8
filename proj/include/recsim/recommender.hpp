#pragma once

// Recommender state (per-user interaction ledger and the population-wide
// virality window) and the softmax recommendation distribution.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "recsim/model.hpp"

namespace recsim {

class CounterStream;

struct RecommenderParams {
    double alpha = 7.0;       // softmax parameter; larger exploits more
    double omega = 0.5;       // weight of virality-based filtering
    std::size_t delta = 5;    // virality window length in timesteps

    void validate() const;
};

/**
 * Dense per-(user, content) record of recommendations, likes and
 * accumulated watch fraction.
 *
 * Also caches the content-based score (A + B) / 2 for every cell; only the
 * cell touched by a recording changes, so the cache costs O(1) per event.
 */
class InteractionLedger {
public:
    InteractionLedger(std::size_t users, std::size_t contents, double mu);

    std::size_t users() const noexcept { return users_; }
    std::size_t contents() const noexcept { return contents_; }
    double mu() const noexcept { return mu_; }

    std::uint32_t rec_count(std::size_t user, std::size_t content) const { return recs_[index(user, content)]; }
    std::uint32_t like_count(std::size_t user, std::size_t content) const { return likes_[index(user, content)]; }
    double watch_sum(std::size_t user, std::size_t content) const { return watch_[index(user, content)]; }

    /// Cached (A + B) / 2 for every content, for one user.
    std::span<const double> content_scores(std::size_t user) const;

    /// Recommendations issued to `user` so far.
    std::uint64_t recommendations(std::size_t user) const;

    /// Adds one recommendation event. Throws std::logic_error when the user
    /// already has an event for `step`.
    void record(std::size_t user, std::size_t content, double w, Engagement decision, std::int64_t step);

private:
    std::size_t index(std::size_t user, std::size_t content) const;

    std::size_t users_;
    std::size_t contents_;
    double mu_;
    std::vector<std::uint32_t> recs_;
    std::vector<std::uint32_t> likes_;
    std::vector<double> watch_;
    std::vector<double> scores_;
    std::vector<std::int64_t> last_step_;
};

/**
 * Ring buffer of the like-count vectors of the last `capacity` committed
 * timesteps, with running per-content and grand totals.
 */
class ViralityWindow {
public:
    ViralityWindow(std::size_t contents, std::size_t capacity);

    std::size_t contents() const noexcept { return contents_; }
    std::size_t capacity() const noexcept { return capacity_; }
    /// Number of timesteps currently held: min(committed, capacity).
    std::size_t size() const noexcept { return held_; }

    /// Appends one completed timestep; evicts the oldest when full.
    void commit(std::span<const std::uint32_t> step_likes);

    /// Like vector committed `age` steps ago (0 = most recent). age < size().
    std::span<const std::uint32_t> step_likes(std::size_t age) const;

    std::span<const std::uint64_t> totals() const noexcept { return totals_; }
    std::uint64_t grand_total() const noexcept { return grand_total_; }

    /// Writes the virality share C for every content; all zero when the window holds no likes.
    void virality(std::span<double> out) const;

private:
    std::size_t contents_;
    std::size_t capacity_;
    std::size_t held_ = 0;
    std::size_t head_ = 0;  // slot the next commit writes
    std::vector<std::uint32_t> ring_;
    std::vector<std::uint64_t> totals_;
    std::uint64_t grand_total_ = 0;
};

/// Fraction of recommendations of `content` that `user` liked; 0 before any.
double value_A(const InteractionLedger& ledger, std::size_t user, std::size_t content);

/// Watch-time score 0.5 tanh(mu (mean watch - 0.25)) + 0.5; mean watch is 0 before any recommendation.
double value_B(const InteractionLedger& ledger, std::size_t user, std::size_t content, double mu);
double watch_score(double mean_watch, double mu) noexcept;

/// Share of the window's likes that went to `content`.
double value_C(const ViralityWindow& window, std::size_t content);

/// (1 - omega) (A + B) / 2 + omega C
double payoff_P(double a, double b, double c, double omega) noexcept;

/// Softmax with parameter `alpha`; `out` must have the same length as `payoffs`.
void recommendation_probabilities(std::span<const double> payoffs, double alpha, std::span<double> out);
std::vector<double> recommendation_probabilities(std::span<const double> payoffs, double alpha);

/// Inverse-CDF categorical draw for `u` in [0, 1).
std::size_t recommendation_from_uniform(std::span<const double> probabilities, double u) noexcept;
std::size_t sample_recommendation(std::span<const double> probabilities, CounterStream& rng) noexcept;

/// Records one consumed recommendation and stages its like for the current timestep.
void record_interaction(InteractionLedger& ledger, std::span<std::uint32_t> staged_likes, std::size_t user,
                        std::size_t content, double w, Engagement decision, std::int64_t step);

}  // namespace recsim
