#pragma once

// Engagement and opinion-distribution metrics, virality dominance, and
// replication aggregation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

namespace recsim {

struct MetricSet {
    double likes_pct = 0.0;
    double watch_rate_pct = 0.0;
    double dispersion_initial = 0.0;
    double dispersion_final = 0.0;
    double radicalisation_initial = 0.0;
    double radicalisation_final = 0.0;
    std::optional<double> dispersion_pct_change;
    std::optional<double> radicalisation_pct_change;
    double dominance = 0.0;
    std::size_t viral_index = 0;
    double viral_stance = 0.0;  // stance of the most-liked content

    friend bool operator==(const MetricSet&, const MetricSet&) = default;
};

double likes_pct(std::uint64_t total_likes, std::size_t users, std::size_t steps);
double watch_rate_pct(double watch_sum, std::size_t users, std::size_t steps);

/// (2 / n) * sum |x_i - mean|
double dispersion(std::span<const double> opinions);
/// (1 / n) * sum x_i^2
double radicalisation(std::span<const double> opinions);

/// 100 (final - initial) / initial; nullopt when initial is 0.
std::optional<double> pct_change(double final_value, double initial_value) noexcept;

struct Dominance {
    double proportion;
    std::size_t index;
};

/// Largest share of likes held by one content. Ties go to the stance nearest
/// 0, then the lowest index; proportion is 0 when there are no likes.
Dominance dominance(std::span<const std::uint64_t> cumulative_likes);

struct AggregateStat {
    double mean;
    double std;  // sample standard deviation
    double ci_low;
    double ci_high;
    std::size_t count;
};

inline constexpr double kCiZ95 = 1.96;

/// Mean, sample std and normal-approximation 95% interval. Throws ConfigError for fewer than 2 values.
AggregateStat aggregate(std::span<const double> values);

}  // namespace recsim
