#include "recsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "recsim/errors.hpp"
#include "recsim/rng.hpp"

namespace recsim {

double content_stance(std::size_t j, std::size_t k) {
    if (k < 2) {
        throw ConfigError("content count must be at least 2, got " + std::to_string(k));
    }
    if (j >= k) {
        throw ConfigError("content index " + std::to_string(j) + " out of range for k = " + std::to_string(k));
    }
    // Integer numerator keeps the grid exactly antisymmetric about 0.
    const double span = static_cast<double>(k - 1);
    return (2.0 * static_cast<double>(j) - span) / span;
}

ContentCatalog::ContentCatalog(std::size_t contents) {
    if (contents < 2) {
        throw ConfigError("content count must be at least 2, got " + std::to_string(contents));
    }
    stances_.reserve(contents);
    for (std::size_t j = 0; j < contents; ++j) {
        stances_.push_back(content_stance(j, contents));
    }
}

UserState UserState::at_start(double initial_opinion, double susceptibility, double rationality) {
    if (!(initial_opinion >= -1.0 && initial_opinion <= 1.0)) {
        throw ConfigError("initial opinion outside [-1, 1]");
    }
    if (!(susceptibility >= 0.0 && susceptibility <= 1.0)) {
        throw ConfigError("susceptibility (lambda) must lie in [0, 1]");
    }
    if (!(rationality >= 0.0) || !std::isfinite(rationality)) {
        throw ConfigError("rationality (beta) must be finite and non-negative");
    }
    return UserState{initial_opinion, initial_opinion, susceptibility, rationality};
}

void ModelParams::validate() const {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be finite and positive");
    if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigError("mu must be finite and positive");
}

EngagementPayoffs engagement_payoffs(double opinion, double stance) noexcept {
    const double gap = opinion - stance;
    const double c = std::cos(1.5 * gap);
    return {
        0.5 * c + 0.5,
        -0.5 * c + 0.5,
        0.5 * std::cos(3.0 * gap - std::numbers::pi) + 0.5,
    };
}

EngagementProbabilities engagement_probabilities(const EngagementPayoffs& payoffs, double rationality) noexcept {
    const double like = rationality * payoffs.like;
    const double dislike = rationality * payoffs.dislike;
    const double neutral = rationality * payoffs.neutral;
    const double top = std::max({like, dislike, neutral});
    const double e_like = std::exp(like - top);
    const double e_dislike = std::exp(dislike - top);
    const double e_neutral = std::exp(neutral - top);
    const double total = e_like + e_dislike + e_neutral;
    return {e_like / total, e_dislike / total, e_neutral / total};
}

Engagement engagement_from_uniform(const EngagementProbabilities& p, double u) noexcept {
    if (u < p.like) return Engagement::like;
    if (u < p.like + p.dislike) return Engagement::dislike;
    if (p.neutral > 0.0) return Engagement::neutral;
    // Rounding left u above the cumulative total; fall back to the last live outcome.
    return p.dislike > 0.0 ? Engagement::dislike : Engagement::like;
}

Engagement sample_engagement(const EngagementProbabilities& p, CounterStream& rng) noexcept {
    return engagement_from_uniform(p, rng.uniform());
}

double watch_rate(double opinion, double stance, double gamma) noexcept {
    return 1.0 / (1.0 + std::exp(-gamma * (opinion * stance)));
}

double update_opinion(const UserState& user, double stance, double w) noexcept {
    // lambda [w s + (1 - w) x] + (1 - lambda) x0, written as two interpolations so
    // that x = x0 = s is reproduced exactly.
    const double consumed = user.opinion + w * (stance - user.opinion);
    const double next = user.initial_opinion + user.susceptibility * (consumed - user.initial_opinion);
    // A convex combination of points in [-1, 1]; clamp only absorbs last-bit rounding.
    return std::clamp(next, -1.0, 1.0);
}

}  // namespace recsim
