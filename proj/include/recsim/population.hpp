#pragma once

// Initial opinion distributions: finite mixtures of beta distributions on
// [0, 1], mapped affinely onto [-1, 1].

#include <cstddef>
#include <string>
#include <vector>

namespace recsim {

class CounterStream;

struct BetaComponent {
    double weight;
    double a;
    double b;

    friend bool operator==(const BetaComponent&, const BetaComponent&) = default;
};

struct InitialDistributionSpec {
    enum class Kind { ndic, bdic, beta, beta_mixture };

    Kind kind = Kind::ndic;
    std::vector<BetaComponent> components;  // weights need not be normalized

    /// Neutral population: Beta(3, 3).
    static InitialDistributionSpec ndic();
    /// Polarised population: 0.5 Beta(2, 5) + 0.5 Beta(5, 2).
    static InitialDistributionSpec bdic();
    static InitialDistributionSpec beta(double a, double b);
    static InitialDistributionSpec beta_mixture(std::vector<BetaComponent> components);

    /// "NDIC", "BDIC", "beta(a:b)" or "mixture(w:a:b|...)"; used as the distribution column in result tables.
    std::string label() const;

    void validate() const;

    friend bool operator==(const InitialDistributionSpec&, const InitialDistributionSpec&) = default;
};

/// Analytic mean and standard deviation of the mapped distribution on [-1, 1].
struct DistributionSummary {
    double mean;
    double std;
};
DistributionSummary summarize(const InitialDistributionSpec& spec);

std::vector<double> sample_opinions(const InitialDistributionSpec& spec, std::size_t n, CounterStream& rng);
std::vector<double> sample_ndic(std::size_t n, CounterStream& rng);
std::vector<double> sample_bdic(std::size_t n, CounterStream& rng);

}  // namespace recsim
