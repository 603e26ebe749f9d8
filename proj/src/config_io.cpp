#include "recsim/config_io.hpp"

#include <set>
#include <string>

#include "recsim/csv.hpp"
#include "recsim/errors.hpp"

namespace recsim {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
    if (!j.is_object()) throw ConfigError(std::string(where) + " must be a JSON object");
    const std::set<std::string> known(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) throw ConfigError(std::string("unknown key '") + key + "' in " + where);
    }
}

template <class T>
T get_as(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

std::size_t get_count(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

double get_real(const json& j, const char* key) {
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

}  // namespace

json to_json(const InitialDistributionSpec& spec) {
    switch (spec.kind) {
        case InitialDistributionSpec::Kind::ndic:
            return "NDIC";
        case InitialDistributionSpec::Kind::bdic:
            return "BDIC";
        case InitialDistributionSpec::Kind::beta:
            return {{"kind", "beta"}, {"a", spec.components.at(0).a}, {"b", spec.components.at(0).b}};
        case InitialDistributionSpec::Kind::beta_mixture: {
            json comps = json::array();
            for (const auto& c : spec.components) comps.push_back({{"weight", c.weight}, {"a", c.a}, {"b", c.b}});
            return {{"kind", "beta-mixture"}, {"components", comps}};
        }
    }
    return nullptr;
}

InitialDistributionSpec distribution_from_json(const json& j) {
    if (j.is_string()) {
        const auto name = j.get<std::string>();
        if (name == "NDIC" || name == "ndic") return InitialDistributionSpec::ndic();
        if (name == "BDIC" || name == "bdic") return InitialDistributionSpec::bdic();
        throw ConfigError("unknown initial distribution '" + name + "' (expected NDIC or BDIC)");
    }
    if (!j.is_object() || !j.contains("kind")) throw ConfigError("initial_distribution needs a 'kind'");
    const auto kind = get_as<std::string>(j, "kind");
    InitialDistributionSpec spec;
    if (kind == "NDIC" || kind == "ndic") {
        reject_unknown_keys(j, {"kind"}, "initial_distribution");
        spec = InitialDistributionSpec::ndic();
    } else if (kind == "BDIC" || kind == "bdic") {
        reject_unknown_keys(j, {"kind"}, "initial_distribution");
        spec = InitialDistributionSpec::bdic();
    } else if (kind == "beta") {
        reject_unknown_keys(j, {"kind", "a", "b"}, "initial_distribution");
        spec = InitialDistributionSpec::beta(get_real(j, "a"), get_real(j, "b"));
    } else if (kind == "beta-mixture") {
        reject_unknown_keys(j, {"kind", "components"}, "initial_distribution");
        std::vector<BetaComponent> comps;
        for (const auto& c : j.at("components")) {
            reject_unknown_keys(c, {"weight", "a", "b"}, "mixture component");
            comps.push_back({get_real(c, "weight"), get_real(c, "a"), get_real(c, "b")});
        }
        spec = InitialDistributionSpec::beta_mixture(std::move(comps));
    } else {
        throw ConfigError("unknown initial distribution kind '" + kind + "'");
    }
    spec.validate();
    return spec;
}

json to_json(const SimulationConfig& c) {
    return {
        {"n", c.users},
        {"tau", c.steps},
        {"k", c.contents},
        {"alpha", c.recommender.alpha},
        {"omega", c.recommender.omega},
        {"delta", c.recommender.delta},
        {"beta", c.rationality},
        {"lambda", c.susceptibility},
        {"gamma", c.model.gamma},
        {"mu", c.model.mu},
        {"initial_distribution", to_json(c.initial)},
        {"seed", c.seed},
        {"trace", {{"recommendations", c.trace.recommendations}, {"snapshot_interval", c.trace.snapshot_interval}}},
    };
}

SimulationConfig simulation_config_from_json(const json& j) {
    reject_unknown_keys(j,
                        {"n", "tau", "k", "alpha", "omega", "delta", "beta", "lambda", "gamma", "mu",
                         "initial_distribution", "seed", "trace"},
                        "simulation config");
    SimulationConfig c;
    if (j.contains("n")) c.users = get_count(j, "n");
    if (j.contains("tau")) c.steps = get_count(j, "tau");
    if (j.contains("k")) c.contents = get_count(j, "k");
    if (j.contains("alpha")) c.recommender.alpha = get_real(j, "alpha");
    if (j.contains("omega")) c.recommender.omega = get_real(j, "omega");
    if (j.contains("delta")) c.recommender.delta = get_count(j, "delta");
    if (j.contains("beta")) c.rationality = get_real(j, "beta");
    if (j.contains("lambda")) c.susceptibility = get_real(j, "lambda");
    if (j.contains("gamma")) c.model.gamma = get_real(j, "gamma");
    if (j.contains("mu")) c.model.mu = get_real(j, "mu");
    if (j.contains("initial_distribution")) c.initial = distribution_from_json(j.at("initial_distribution"));
    if (j.contains("seed")) {
        const json& s = j.at("seed");
        if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0)) {
            throw ConfigError("'seed' must be a non-negative integer");
        }
        c.seed = s.get<std::uint64_t>();
    }
    if (j.contains("trace")) {
        const json& t = j.at("trace");
        reject_unknown_keys(t, {"recommendations", "snapshot_interval"}, "trace");
        if (t.contains("recommendations")) c.trace.recommendations = get_as<bool>(t, "recommendations");
        if (t.contains("snapshot_interval")) c.trace.snapshot_interval = get_count(t, "snapshot_interval");
    }
    c.validate();
    return c;
}

json to_json(const SweepSpec& s) {
    json dists = json::array();
    for (const auto& d : s.distributions) dists.push_back(to_json(d));
    json base = to_json(s.base);
    return {
        {"name", s.name},
        {"base", base},
        {"distributions", dists},
        {"alpha", s.alphas},
        {"k", s.contents},
        {"omega", s.omegas},
        {"delta", s.deltas},
        {"lambda", s.lambda},
        {"replications", s.replications},
        {"master_seed", s.master_seed},
    };
}

SweepSpec sweep_spec_from_json(const json& j) {
    reject_unknown_keys(j,
                        {"name", "base", "distributions", "alpha", "k", "omega", "delta", "lambda", "replications",
                         "master_seed"},
                        "sweep config");
    SweepSpec s;
    if (j.contains("name")) s.name = get_as<std::string>(j, "name");
    if (j.contains("base")) s.base = simulation_config_from_json(j.at("base"));
    if (j.contains("distributions")) {
        s.distributions.clear();
        for (const auto& d : j.at("distributions")) s.distributions.push_back(distribution_from_json(d));
    }
    auto real_list = [&](const char* key, std::vector<double> fallback) {
        if (!j.contains(key)) return fallback;
        std::vector<double> out;
        for (const auto& v : j.at(key)) {
            if (!v.is_number()) throw ConfigError(std::string("'") + key + "' entries must be numbers");
            out.push_back(v.get<double>());
        }
        return out;
    };
    auto count_list = [&](const char* key, std::vector<std::size_t> fallback) {
        if (!j.contains(key)) return fallback;
        std::vector<std::size_t> out;
        for (const auto& v : j.at(key)) {
            if (!v.is_number_integer() || v.get<long long>() < 0) {
                throw ConfigError(std::string("'") + key + "' entries must be non-negative integers");
            }
            out.push_back(v.get<std::size_t>());
        }
        return out;
    };
    s.alphas = real_list("alpha", {s.base.recommender.alpha});
    s.contents = count_list("k", {s.base.contents});
    s.omegas = real_list("omega", {s.base.recommender.omega});
    s.deltas = count_list("delta", {s.base.recommender.delta});
    s.lambda = j.contains("lambda") ? get_real(j, "lambda") : s.base.susceptibility;
    if (j.contains("replications")) s.replications = get_count(j, "replications");
    if (j.contains("master_seed")) s.master_seed = get_as<std::uint64_t>(j, "master_seed");
    s.validate();
    return s;
}

json to_json(const MetricSet& m) {
    auto opt = [](const std::optional<double>& v) -> json { return v ? json(*v) : json(nullptr); };
    return {
        {"likes_pct", m.likes_pct},
        {"wr_pct", m.watch_rate_pct},
        {"md_0", m.dispersion_initial},
        {"md_tau", m.dispersion_final},
        {"mr_0", m.radicalisation_initial},
        {"mr_tau", m.radicalisation_final},
        {"md_pct_change", opt(m.dispersion_pct_change)},
        {"mr_pct_change", opt(m.radicalisation_pct_change)},
        {"dominance", m.dominance},
        {"viral_index", m.viral_index},
        {"viral_stance", m.viral_stance},
    };
}

json load_json_file(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

}  // namespace recsim
