#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "recsim/errors.hpp"
#include "recsim/metrics.hpp"

using namespace recsim;

TEST_CASE("engagement percentages") {
    CHECK(likes_pct(500 * 1000, 500, 1000) == 100.0);
    CHECK(likes_pct(0, 500, 1000) == 0.0);
    CHECK(likes_pct(375000, 500, 1000) == 75.0);
    CHECK(watch_rate_pct(0.5 * 500 * 1000, 500, 1000) == 50.0);
    CHECK(watch_rate_pct(500.0 * 1000, 500, 1000) == 100.0);
    CHECK(watch_rate_pct(300000.0, 500, 1000) == 60.0);
}

TEST_CASE("dispersion and radicalisation hand cases") {
    for (std::size_t n : {3, 10, 500, 1001}) CHECK(dispersion(std::vector<double>(n, 0.3)) == 0.0);
    CHECK(dispersion(std::vector<double>(500, 0.4)) == 0.0);
    std::vector<double> split(10, -1.0);
    std::fill(split.begin() + 5, split.end(), 1.0);
    CHECK(dispersion(split) == 2.0);
    CHECK(radicalisation(split) == 1.0);
    const std::vector<double> three{-0.5, 0.0, 0.5};
    CHECK(dispersion(three) == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(radicalisation(three) == doctest::Approx(1.0 / 6).epsilon(1e-15));
    CHECK(radicalisation(std::vector<double>(7, 0.0)) == 0.0);
}

TEST_CASE("metric oracles on random vectors") {
    std::mt19937_64 g(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + trial % 8 + (trial % 5 == 0 ? trial % 600 : 0);
        std::vector<double> x(n);
        for (auto& v : x) v = u(g);
        CHECK(std::fabs(dispersion(x) - oracle::naive_dispersion(x)) <= 1e-12);
        CHECK(std::fabs(radicalisation(x) - oracle::naive_radicalisation(x)) <= 1e-12);

        std::vector<double> shifted(x), scaled(x);
        const double c = 0.5 * u(g);
        for (std::size_t i = 0; i < n; ++i) {
            shifted[i] = 0.5 * x[i] + 0.25;
            scaled[i] = c * x[i];
        }
        std::vector<double> half(x);
        for (auto& v : half) v *= 0.5;
        CHECK(dispersion(shifted) == doctest::Approx(dispersion(half)).epsilon(1e-12));
        CHECK(dispersion(scaled) == doctest::Approx(std::fabs(c) * dispersion(x)).epsilon(1e-12));
        CHECK(std::sqrt(radicalisation(scaled)) == doctest::Approx(std::fabs(c) * std::sqrt(radicalisation(x))).epsilon(1e-12));
    }
    const std::vector<double> x{0.1, -0.2, 0.4};
    std::vector<double> y{0.35, 0.05, 0.65};
    CHECK(dispersion(y) == doctest::Approx(dispersion(x)).epsilon(1e-14));
    CHECK(radicalisation(y) != doctest::Approx(radicalisation(x)));
}

TEST_CASE("percentage change") {
    CHECK(pct_change(0.3, 0.3) == 0.0);
    CHECK(*pct_change(0.3, 0.2) == doctest::Approx(50.0).epsilon(1e-14));
    CHECK(*pct_change(0.2, 0.4) == -50.0);
    CHECK_FALSE(pct_change(0.5, 0.0).has_value());
}

TEST_CASE("dominance") {
    const std::vector<std::uint64_t> all{0, 0, 50, 0};
    CHECK(dominance(all).proportion == 1.0);
    CHECK(dominance(all).index == 2);
    const std::vector<std::uint64_t> even{7, 7, 7, 7};
    CHECK(dominance(even).proportion == 0.25);
    const std::vector<std::uint64_t> three{100, 700, 200};
    CHECK(dominance(three).proportion == 0.7);
    CHECK(dominance(three).index == 1);
    const std::vector<std::uint64_t> none{0, 0, 0};
    CHECK(dominance(none).proportion == 0.0);
    const std::vector<std::uint64_t> tie2{5, 5};
    CHECK(dominance(tie2).index == 0);
    const std::vector<std::uint64_t> tie5{9, 0, 9, 9, 1};
    CHECK(dominance(tie5).index == 2);
    for (std::size_t k = 2; k < 30; ++k) {
        const std::vector<std::uint64_t> flat(k, 13);
        CHECK(dominance(flat).proportion == 1.0 / static_cast<double>(k));
    }
}

TEST_CASE("aggregate") {
    const std::vector<double> c(10, 3.7);
    const auto s = aggregate(c);
    CHECK(s.mean == 3.7);
    CHECK(s.std == 0.0);
    CHECK(s.ci_low == 3.7);
    CHECK(s.ci_high == 3.7);
    CHECK(s.count == 10);

    const auto two = aggregate(std::vector<double>{0.0, 10.0});
    CHECK(two.mean == 5.0);
    CHECK(two.std == doctest::Approx(7.0710678118654755));
    CHECK(two.ci_low == doctest::Approx(5.0 - 9.8));
    CHECK(two.ci_high == doctest::Approx(5.0 + 9.8));

    CHECK_THROWS_AS(aggregate(std::vector<double>{1.0}), ConfigError);

    std::mt19937_64 g(42);
    std::normal_distribution<double> normal(1.0, 2.0);
    auto width = [&](std::size_t reps) {
        double total = 0.0;
        for (int t = 0; t < 400; ++t) {
            std::vector<double> v(reps);
            for (auto& x : v) x = normal(g);
            const auto a = aggregate(v);
            total += a.ci_high - a.ci_low;
        }
        return total / 400;
    };
    const double w25 = width(25), w100 = width(100);
    CHECK(w25 / w100 == doctest::Approx(2.0).epsilon(0.05));
    CHECK(w100 == doctest::Approx(2 * 1.96 * 2.0 / 10).epsilon(0.05));
}
