#include "recsim/population.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "recsim/csv.hpp"
#include "recsim/errors.hpp"
#include "recsim/rng.hpp"

namespace recsim {

InitialDistributionSpec InitialDistributionSpec::ndic() { return {Kind::ndic, {{1.0, 3.0, 3.0}}}; }

InitialDistributionSpec InitialDistributionSpec::bdic() {
    return {Kind::bdic, {{0.5, 2.0, 5.0}, {0.5, 5.0, 2.0}}};
}

InitialDistributionSpec InitialDistributionSpec::beta(double a, double b) { return {Kind::beta, {{1.0, a, b}}}; }

InitialDistributionSpec InitialDistributionSpec::beta_mixture(std::vector<BetaComponent> components) {
    return {Kind::beta_mixture, std::move(components)};
}

std::string InitialDistributionSpec::label() const {
    switch (kind) {
        case Kind::ndic:
            return "NDIC";
        case Kind::bdic:
            return "BDIC";
        case Kind::beta:
            return "beta(" + format_double(components.at(0).a) + ":" + format_double(components.at(0).b) + ")";
        case Kind::beta_mixture: {
            std::string out = "mixture(";
            for (std::size_t i = 0; i < components.size(); ++i) {
                if (i > 0) out += "|";
                out += format_double(components[i].weight) + ":" + format_double(components[i].a) + ":" +
                       format_double(components[i].b);
            }
            return out + ")";
        }
    }
    return "unknown";
}

void InitialDistributionSpec::validate() const {
    if (components.empty()) throw ConfigError("initial distribution has no components");
    double total = 0.0;
    for (const auto& c : components) {
        if (!(c.weight > 0.0) || !std::isfinite(c.weight)) throw ConfigError("mixture weights must be positive");
        if (!(c.a > 0.0) || !(c.b > 0.0) || !std::isfinite(c.a) || !std::isfinite(c.b)) {
            throw ConfigError("beta shape parameters must be positive");
        }
        total += c.weight;
    }
    if (!std::isfinite(total)) throw ConfigError("mixture weights overflow");
    if (kind == Kind::beta && components.size() != 1) throw ConfigError("beta distribution takes one component");
}

DistributionSummary summarize(const InitialDistributionSpec& spec) {
    spec.validate();
    double total_weight = 0.0;
    for (const auto& c : spec.components) total_weight += c.weight;
    // Moments on [0, 1], then y = 2x - 1.
    double m1 = 0.0;
    double m2 = 0.0;
    for (const auto& c : spec.components) {
        const double w = c.weight / total_weight;
        const double mean = c.a / (c.a + c.b);
        const double var = c.a * c.b / ((c.a + c.b) * (c.a + c.b) * (c.a + c.b + 1.0));
        m1 += w * mean;
        m2 += w * (var + mean * mean);
    }
    const double var01 = m2 - m1 * m1;
    return {2.0 * m1 - 1.0, 2.0 * std::sqrt(std::max(var01, 0.0))};
}

std::vector<double> sample_opinions(const InitialDistributionSpec& spec, std::size_t n, CounterStream& rng) {
    spec.validate();
    std::vector<double> cumulative;
    double total_weight = 0.0;
    for (const auto& c : spec.components) {
        total_weight += c.weight;
        cumulative.push_back(total_weight);
    }

    std::vector<std::gamma_distribution<double>> gamma_a;
    std::vector<std::gamma_distribution<double>> gamma_b;
    for (const auto& c : spec.components) {
        gamma_a.emplace_back(c.a, 1.0);
        gamma_b.emplace_back(c.b, 1.0);
    }

    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t comp = 0;
        if (spec.components.size() > 1) {
            const double u = rng.uniform() * total_weight;
            comp = static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                            cumulative.begin());
            comp = std::min(comp, spec.components.size() - 1);
        }
        const double x = gamma_a[comp](rng);
        const double y = gamma_b[comp](rng);
        const double beta01 = x / (x + y);
        out.push_back(std::clamp(2.0 * beta01 - 1.0, -1.0, 1.0));
    }
    return out;
}

std::vector<double> sample_ndic(std::size_t n, CounterStream& rng) {
    if (n < 2) throw ConfigError("population needs at least 2 users");
    return sample_opinions(InitialDistributionSpec::ndic(), n, rng);
}

std::vector<double> sample_bdic(std::size_t n, CounterStream& rng) {
    if (n < 2) throw ConfigError("population needs at least 2 users");
    return sample_opinions(InitialDistributionSpec::bdic(), n, rng);
}

}  // namespace recsim
