#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "recsim/errors.hpp"
#include "recsim/population.hpp"
#include "recsim/rng.hpp"

using namespace recsim;

namespace {

struct Moments {
    double mean;
    double std;
};

Moments moments(const std::vector<double>& x) {
    long double s = 0, s2 = 0;
    for (double v : x) s += v;
    const long double m = s / x.size();
    for (double v : x) s2 += (v - m) * (v - m);
    return {static_cast<double>(m), static_cast<double>(std::sqrt(s2 / x.size()))};
}

std::vector<double> negated(std::vector<double> x) {
    for (auto& v : x) v = -v;
    return x;
}

}  // namespace

TEST_CASE("NDIC moments") {
    CounterStream rng(101, kInitStream);
    const auto x = sample_ndic(1000000, rng);
    for (double v : x) REQUIRE((v >= -1.0 && v <= 1.0));
    const auto m = moments(x);
    CHECK(std::fabs(m.mean) < 0.002);
    CHECK(std::fabs(m.std - 0.378) < 0.003);
    CHECK(summarize(InitialDistributionSpec::ndic()).std == doctest::Approx(1.0 / std::sqrt(7.0)).epsilon(1e-14));
}

TEST_CASE("BDIC moments and modes") {
    CounterStream rng(102, kInitStream);
    const auto x = sample_bdic(1000000, rng);
    for (double v : x) REQUIRE((v >= -1.0 && v <= 1.0));
    const auto m = moments(x);
    CHECK(std::fabs(m.mean) < 0.002);
    CHECK(std::fabs(m.std - 0.535) < 0.004);
    CHECK(summarize(InitialDistributionSpec::bdic()).std == doctest::Approx(std::sqrt(2.0 / 7.0)).epsilon(1e-14));

    std::vector<std::size_t> hist(40, 0);
    for (double v : x) ++hist[std::min<std::size_t>(39, static_cast<std::size_t>((v + 1.0) * 20.0))];
    std::size_t left = 0, right = 20;
    for (std::size_t b = 0; b < 20; ++b) {
        if (hist[b] > hist[left]) left = b;
        if (hist[b + 20] > hist[right]) right = b + 20;
    }
    CHECK(left < 20);
    CHECK(right >= 20);
    CHECK(left + right >= 37);
    CHECK(left + right <= 41);
    CHECK(hist[left] > hist[19] * 1.2);
    CHECK(std::fabs(static_cast<double>(hist[left]) - static_cast<double>(hist[right])) <
          0.05 * static_cast<double>(hist[left]));
}

TEST_CASE("sign symmetry passes two-sample KS") {
    for (const auto& spec : {InitialDistributionSpec::ndic(), InitialDistributionSpec::bdic()}) {
        CAPTURE(spec.label());
        CounterStream a(103, 0), b(103, 1);
        const auto x = sample_opinions(spec, 100000, a);
        const auto y = negated(sample_opinions(spec, 100000, b));
        CHECK(oracle::ks_statistic(x, y) < oracle::ks_critical_1pct(x.size(), y.size()));
    }
}

TEST_CASE("custom distributions") {
    CounterStream rng(104, 0);
    const auto skew = InitialDistributionSpec::beta(2.0, 8.0);
    const auto x = sample_opinions(skew, 200000, rng);
    const auto m = moments(x);
    const auto s = summarize(skew);
    CHECK(s.mean == doctest::Approx(2.0 * 0.2 - 1.0));
    CHECK(m.mean == doctest::Approx(s.mean).epsilon(0.01));
    CHECK(m.std == doctest::Approx(s.std).epsilon(0.01));

    const auto mix = InitialDistributionSpec::beta_mixture({{3.0, 2.0, 5.0}, {1.0, 5.0, 2.0}});
    const auto mx = moments(sample_opinions(mix, 200000, rng));
    CHECK(mx.mean == doctest::Approx(summarize(mix).mean).epsilon(0.02));
    CHECK(mix.label() == "mixture(3:2:5|1:5:2)");
    CHECK(skew.label() == "beta(2:8)");
    CHECK(InitialDistributionSpec::ndic().label() == "NDIC");
    CHECK(InitialDistributionSpec::bdic().label() == "BDIC");
}

TEST_CASE("distribution validation") {
    CHECK_THROWS_AS(InitialDistributionSpec::beta(0.0, 1.0).validate(), ConfigError);
    CHECK_THROWS_AS(InitialDistributionSpec::beta_mixture({}).validate(), ConfigError);
    CHECK_THROWS_AS(InitialDistributionSpec::beta_mixture({{-1.0, 2.0, 2.0}}).validate(), ConfigError);
    CounterStream rng(1, 0);
    CHECK_THROWS_AS(sample_ndic(1, rng), ConfigError);
    CHECK_THROWS_AS(sample_bdic(0, rng), ConfigError);
}

TEST_CASE("sampling is deterministic per stream") {
    CounterStream a(7, kInitStream), b(7, kInitStream), c(8, kInitStream);
    const auto x = sample_bdic(500, a);
    CHECK(x == sample_bdic(500, b));
    CHECK(x != sample_bdic(500, c));
}
