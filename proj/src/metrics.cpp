#include "recsim/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "recsim/errors.hpp"
#include "recsim/model.hpp"
#include "recsim/simd/kernels.hpp"

namespace recsim {

double likes_pct(std::uint64_t total_likes, std::size_t users, std::size_t steps) {
    const double possible = static_cast<double>(users) * static_cast<double>(steps);
    if (possible <= 0.0) throw std::invalid_argument("likes_pct needs a positive number of recommendations");
    if (static_cast<double>(total_likes) > possible) throw std::invalid_argument("more likes than recommendations");
    return 100.0 * static_cast<double>(total_likes) / possible;
}

double watch_rate_pct(double watch_sum, std::size_t users, std::size_t steps) {
    const double possible = static_cast<double>(users) * static_cast<double>(steps);
    if (possible <= 0.0) throw std::invalid_argument("watch_rate_pct needs a positive number of recommendations");
    if (!(watch_sum >= 0.0 && watch_sum <= possible)) throw std::invalid_argument("watch sum out of range");
    return 100.0 * watch_sum / possible;
}

double dispersion(std::span<const double> opinions) {
    if (opinions.empty()) throw std::invalid_argument("dispersion of an empty population");
    const double n = static_cast<double>(opinions.size());
    // Mean about the first element, so a constant population has an exact mean.
    const double pivot = opinions[0];
    double shifted = 0.0;
    for (double x : opinions) shifted += x - pivot;
    const double mean = pivot + shifted / n;
    return 2.0 * simd::sum_abs_deviation(opinions, mean) / n;
}

double radicalisation(std::span<const double> opinions) {
    if (opinions.empty()) throw std::invalid_argument("radicalisation of an empty population");
    return simd::sum_squares(opinions) / static_cast<double>(opinions.size());
}

std::optional<double> pct_change(double final_value, double initial_value) noexcept {
    if (initial_value == 0.0) return std::nullopt;
    return 100.0 * (final_value - initial_value) / initial_value;
}

Dominance dominance(std::span<const std::uint64_t> cumulative_likes) {
    const std::size_t k = cumulative_likes.size();
    if (k == 0) return {0.0, 0};
    std::uint64_t total = 0;
    std::size_t best = 0;
    for (std::size_t j = 0; j < k; ++j) {
        total += cumulative_likes[j];
        if (j == 0) continue;
        if (cumulative_likes[j] > cumulative_likes[best]) {
            best = j;
        } else if (cumulative_likes[j] == cumulative_likes[best] && k >= 2 &&
                   std::fabs(content_stance(j, k)) < std::fabs(content_stance(best, k))) {
            best = j;
        }
    }
    if (total == 0) return {0.0, best};
    return {static_cast<double>(cumulative_likes[best]) / static_cast<double>(total), best};
}

AggregateStat aggregate(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw ConfigError("aggregate needs at least 2 replications, got " + std::to_string(n));
    // Shifted by the first value so a constant sample reproduces its value exactly.
    const double pivot = values[0];
    double shifted = 0.0;
    for (double v : values) shifted += v - pivot;
    const double mean = pivot + shifted / static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const double half = kCiZ95 * sd / std::sqrt(static_cast<double>(n));
    return {mean, sd, mean - half, mean + half, n};
}

}  // namespace recsim
