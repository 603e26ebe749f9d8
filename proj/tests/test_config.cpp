#include <doctest.h>

#include <json.hpp>

#include "recsim/config_io.hpp"
#include "recsim/csv.hpp"
#include "recsim/errors.hpp"

using namespace recsim;
using nlohmann::json;

TEST_CASE("simulation config round trip") {
    SimulationConfig c;
    c.users = 77;
    c.contents = 9;
    c.recommender.alpha = 3.5;
    c.initial = InitialDistributionSpec::beta_mixture({{1, 2, 3}, {2, 3, 2}});
    c.seed = 123456789012345ULL;
    c.trace.snapshot_interval = 5;
    const auto back = simulation_config_from_json(to_json(c));
    CHECK(to_json(back) == to_json(c));
    CHECK(back.initial == c.initial);
    CHECK(back.seed == c.seed);
}

TEST_CASE("config rejects bad input") {
    CHECK_THROWS_AS(simulation_config_from_json(json{{"n", 10}, {"bogus", 1}}), ConfigError);
    CHECK_THROWS_AS(simulation_config_from_json(json{{"n", -3}}), ConfigError);
    CHECK_THROWS_AS(simulation_config_from_json(json{{"alpha", "high"}}), ConfigError);
    CHECK_THROWS_AS(simulation_config_from_json(json{{"omega", 2.0}}), ConfigError);
    CHECK_THROWS_AS(simulation_config_from_json(json{{"initial_distribution", "uniform"}}), ConfigError);
    CHECK_THROWS_AS(simulation_config_from_json(json{{"trace", {{"every", 1}}}}), ConfigError);
    CHECK_THROWS_AS(simulation_config_from_json(json{{"seed", -1}}), ConfigError);
    CHECK_THROWS_AS(simulation_config_from_json(json::array()), ConfigError);
    CHECK(simulation_config_from_json(json{{"initial_distribution", {{"kind", "beta"}, {"a", 2}, {"b", 2}}}}).initial ==
          InitialDistributionSpec::beta(2, 2));
}

TEST_CASE("sweep config") {
    const json j = {
        {"name", "lam"},
        {"base", {{"n", 40}, {"tau", 30}}},
        {"distributions", {"NDIC"}},
        {"alpha", {1, 2}},
        {"lambda", 0.2},
        {"replications", 4},
    };
    const auto s = sweep_spec_from_json(j);
    CHECK(s.alphas == std::vector<double>{1, 2});
    CHECK(s.contents == std::vector<std::size_t>{21});
    CHECK(s.lambda == 0.2);
    CHECK(s.grid().size() == 2);
    CHECK(s.config_for(s.grid()[0], 0).susceptibility == 0.2);
    CHECK(sweep_spec_from_json(to_json(s)).grid().size() == 2);
    CHECK_THROWS_AS(sweep_spec_from_json(json{{"alpha", json::array()}}), ConfigError);
    CHECK_THROWS_AS(sweep_spec_from_json(json{{"axes", 1}}), ConfigError);
}

TEST_CASE("csv helpers") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.5) == "-2.5");
    CHECK(format_optional(std::nullopt).empty());
    CHECK(parse_double("0.1") == 0.1);
    CHECK_THROWS(parse_double("0.1x"));
    CHECK_FALSE(parse_optional("").has_value());
    CHECK(split_csv_line("a,,b") == std::vector<std::string>{"a", "", "b"});
    CHECK_THROWS_AS(read_file("/nonexistent/recsim/file"), IoError);
}
