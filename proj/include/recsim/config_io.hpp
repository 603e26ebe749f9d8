#pragma once

// JSON encodings of run and sweep configurations. Unknown keys are rejected.

#include <filesystem>

#include <json.hpp>

#include "recsim/engine.hpp"
#include "recsim/experiments.hpp"

namespace recsim {

nlohmann::json to_json(const InitialDistributionSpec& spec);
InitialDistributionSpec distribution_from_json(const nlohmann::json& j);

/// Keys: n, tau, k, alpha, omega, delta, beta, lambda, gamma, mu,
/// initial_distribution, seed, trace {recommendations, snapshot_interval}.
/// Missing keys keep their defaults.
nlohmann::json to_json(const SimulationConfig& config);
SimulationConfig simulation_config_from_json(const nlohmann::json& j);

/// Keys: name, base, distributions, alpha, k, omega, delta, lambda, replications, master_seed.
nlohmann::json to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MetricSet& metrics);

/// Reads and parses a JSON file; IoError when unreadable, ConfigError when malformed.
nlohmann::json load_json_file(const std::filesystem::path& path);

}  // namespace recsim
