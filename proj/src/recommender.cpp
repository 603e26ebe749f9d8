#include "recsim/recommender.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "recsim/errors.hpp"
#include "recsim/rng.hpp"
#include "recsim/simd/kernels.hpp"

namespace recsim {

void RecommenderParams::validate() const {
    if (!std::isfinite(alpha) || alpha < 0.0) throw ConfigError("alpha must be finite and non-negative");
    if (!(omega >= 0.0 && omega <= 1.0)) throw ConfigError("omega must lie in [0, 1]");
    if (delta < 1) throw ConfigError("delta must be at least 1");
}

// ---------------------------------------------------------------------------
// InteractionLedger

InteractionLedger::InteractionLedger(std::size_t users, std::size_t contents, double mu)
    : users_(users),
      contents_(contents),
      mu_(mu),
      recs_(users * contents, 0),
      likes_(users * contents, 0),
      watch_(users * contents, 0.0),
      scores_(users * contents, 0.5 * (0.0 + watch_score(0.0, mu))),
      last_step_(users, -1) {
    if (users == 0 || contents == 0) throw ConfigError("ledger needs at least one user and one content");
    if (!(mu > 0.0)) throw ConfigError("mu must be positive");
}

std::size_t InteractionLedger::index(std::size_t user, std::size_t content) const {
    if (user >= users_ || content >= contents_) throw std::out_of_range("ledger index out of range");
    return user * contents_ + content;
}

std::span<const double> InteractionLedger::content_scores(std::size_t user) const {
    return std::span<const double>(scores_).subspan(index(user, 0), contents_);
}

std::uint64_t InteractionLedger::recommendations(std::size_t user) const {
    const std::size_t base = index(user, 0);
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < contents_; ++j) total += recs_[base + j];
    return total;
}

void InteractionLedger::record(std::size_t user, std::size_t content, double w, Engagement decision,
                               std::int64_t step) {
    const std::size_t cell = index(user, content);
    if (last_step_[user] >= step) {
        throw std::logic_error("interaction for user " + std::to_string(user) + " already recorded at step " +
                               std::to_string(step));
    }
    last_step_[user] = step;
    recs_[cell] += 1;
    watch_[cell] += w;
    if (decision == Engagement::like) likes_[cell] += 1;
    scores_[cell] = 0.5 * (value_A(*this, user, content) + value_B(*this, user, content, mu_));
}

// ---------------------------------------------------------------------------
// ViralityWindow

ViralityWindow::ViralityWindow(std::size_t contents, std::size_t capacity)
    : contents_(contents), capacity_(capacity), ring_(contents * capacity, 0), totals_(contents, 0) {
    if (contents == 0) throw ConfigError("virality window needs at least one content");
    if (capacity == 0) throw ConfigError("delta must be at least 1");
}

void ViralityWindow::commit(std::span<const std::uint32_t> step_likes) {
    if (step_likes.size() != contents_) throw std::invalid_argument("like vector length does not match k");
    std::uint32_t* slot = ring_.data() + head_ * contents_;
    if (held_ == capacity_) {
        for (std::size_t j = 0; j < contents_; ++j) {
            totals_[j] -= slot[j];
            grand_total_ -= slot[j];
        }
    } else {
        ++held_;
    }
    for (std::size_t j = 0; j < contents_; ++j) {
        slot[j] = step_likes[j];
        totals_[j] += step_likes[j];
        grand_total_ += step_likes[j];
    }
    head_ = (head_ + 1) % capacity_;
}

std::span<const std::uint32_t> ViralityWindow::step_likes(std::size_t age) const {
    if (age >= held_) throw std::out_of_range("virality window age out of range");
    const std::size_t slot = (head_ + capacity_ - 1 - age) % capacity_;
    return std::span<const std::uint32_t>(ring_).subspan(slot * contents_, contents_);
}

void ViralityWindow::virality(std::span<double> out) const {
    if (out.size() != contents_) throw std::invalid_argument("virality output length does not match k");
    if (grand_total_ == 0) {
        for (double& c : out) c = 0.0;
        return;
    }
    const double denom = static_cast<double>(grand_total_);
    for (std::size_t j = 0; j < contents_; ++j) out[j] = static_cast<double>(totals_[j]) / denom;
}

// ---------------------------------------------------------------------------
// Scores

double value_A(const InteractionLedger& ledger, std::size_t user, std::size_t content) {
    const std::uint32_t recs = ledger.rec_count(user, content);
    if (recs == 0) return 0.0;
    return static_cast<double>(ledger.like_count(user, content)) / static_cast<double>(recs);
}

double watch_score(double mean_watch, double mu) noexcept {
    return 0.5 * std::tanh(mu * (mean_watch - 0.25)) + 0.5;
}

double value_B(const InteractionLedger& ledger, std::size_t user, std::size_t content, double mu) {
    const std::uint32_t recs = ledger.rec_count(user, content);
    const double mean_watch = recs == 0 ? 0.0 : ledger.watch_sum(user, content) / static_cast<double>(recs);
    return watch_score(mean_watch, mu);
}

double value_C(const ViralityWindow& window, std::size_t content) {
    if (content >= window.contents()) throw std::out_of_range("content index out of range");
    if (window.grand_total() == 0) return 0.0;
    return static_cast<double>(window.totals()[content]) / static_cast<double>(window.grand_total());
}

double payoff_P(double a, double b, double c, double omega) noexcept {
    return (1.0 - omega) * (0.5 * (a + b)) + omega * c;
}

void recommendation_probabilities(std::span<const double> payoffs, double alpha, std::span<double> out) {
    if (out.size() != payoffs.size()) throw std::invalid_argument("probability buffer length mismatch");
    simd::softmax(payoffs, alpha, out);
}

std::vector<double> recommendation_probabilities(std::span<const double> payoffs, double alpha) {
    std::vector<double> out(payoffs.size());
    recommendation_probabilities(payoffs, alpha, out);
    return out;
}

std::size_t recommendation_from_uniform(std::span<const double> probabilities, double u) noexcept {
    double cumulative = 0.0;
    std::size_t last_live = 0;
    for (std::size_t j = 0; j < probabilities.size(); ++j) {
        if (probabilities[j] > 0.0) last_live = j;
        cumulative += probabilities[j];
        if (u < cumulative) return j;
    }
    return last_live;
}

std::size_t sample_recommendation(std::span<const double> probabilities, CounterStream& rng) noexcept {
    return recommendation_from_uniform(probabilities, rng.uniform());
}

void record_interaction(InteractionLedger& ledger, std::span<std::uint32_t> staged_likes, std::size_t user,
                        std::size_t content, double w, Engagement decision, std::int64_t step) {
    if (content >= staged_likes.size()) throw std::out_of_range("content index out of range");
    ledger.record(user, content, w, decision, step);
    if (decision == Engagement::like) staged_likes[content] += 1;
}

}  // namespace recsim
