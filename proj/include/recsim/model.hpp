#pragma once

// User-side processes: content stances, engagement payoffs and choice,
// watch rate, and the Friedkin-Johnsen opinion update.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace recsim {

class CounterStream;

enum class Engagement : std::int8_t { dislike = -1, neutral = 0, like = 1 };

/// Utilities a user assigns to each engagement choice.
struct EngagementPayoffs {
    double like;
    double dislike;
    double neutral;
};

struct EngagementProbabilities {
    double like;
    double dislike;
    double neutral;
};

/// The k fixed content stances, equally spaced on [-1, 1].
class ContentCatalog {
public:
    explicit ContentCatalog(std::size_t contents);

    std::size_t size() const noexcept { return stances_.size(); }
    double stance(std::size_t j) const { return stances_.at(j); }
    std::span<const double> stances() const noexcept { return stances_; }

private:
    std::vector<double> stances_;
};

struct UserState {
    double initial_opinion;
    double opinion;
    double susceptibility;  // lambda in [0, 1]
    double rationality;     // beta >= 0

    static UserState at_start(double initial_opinion, double susceptibility, double rationality);
};

struct ModelParams {
    double gamma = 5.0;  // watch-rate steepness
    double mu = 5.0;     // steepness of the watch-time score

    void validate() const;
};

/// 2 j / (k - 1) - 1. Throws ConfigError for k < 2 or j >= k.
double content_stance(std::size_t j, std::size_t k);

EngagementPayoffs engagement_payoffs(double opinion, double stance) noexcept;

/// Log-linear (softmax) choice over the three payoffs with inverse temperature `rationality`.
EngagementProbabilities engagement_probabilities(const EngagementPayoffs& payoffs, double rationality) noexcept;

/// Inverse-CDF draw in the order like, dislike, neutral; `u` in [0, 1).
Engagement engagement_from_uniform(const EngagementProbabilities& p, double u) noexcept;
Engagement sample_engagement(const EngagementProbabilities& p, CounterStream& rng) noexcept;

/// Sigmoid of opinion-stance alignment, in (0, 1).
double watch_rate(double opinion, double stance, double gamma) noexcept;

/// Opinion after consuming content of `stance` for fraction `w` of its length.
double update_opinion(const UserState& user, double stance, double w) noexcept;

}  // namespace recsim
