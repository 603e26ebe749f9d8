#include <doctest.h>

#include <filesystem>
#include <set>
#include <string>

#include <json.hpp>

#include "recsim/config_io.hpp"
#include "recsim/csv.hpp"
#include "recsim/errors.hpp"
#include "recsim/experiments.hpp"

using namespace recsim;
namespace fs = std::filesystem;

namespace {

SweepSpec tiny_spec() {
    SweepSpec s;
    s.name = "tiny";
    s.base.users = 30;
    s.base.steps = 25;
    s.alphas = {2.0, 7.0};
    s.contents = {3, 4};
    s.omegas = {0.5};
    s.deltas = {5};
    s.replications = 3;
    return s;
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("recsim-test-" + name);
    fs::remove_all(dir);
    return dir;
}

std::size_t line_count(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

}  // namespace

TEST_CASE("preset grids") {
    const auto rq1 = preset_rq1();
    CHECK(rq1.grid().size() == 20);
    CHECK(rq1.run_count() == 1000);
    CHECK(rq1.alphas.front() == 2.0);
    CHECK(rq1.alphas.back() == 20.0);
    CHECK(rq1.contents == std::vector<std::size_t>{21});

    const auto rq2 = preset_rq2();
    CHECK(rq2.alphas == std::vector<double>{7.0});
    CHECK(rq2.contents.front() == 2);
    CHECK(rq2.contents.back() == 21);
    CHECK(rq2.contents.size() == 11);
    const auto ext = preset_rq2(true);
    CHECK(ext.contents.size() == 13);
    CHECK(std::count(ext.contents.begin(), ext.contents.end(), 41) == 1);
    CHECK(std::count(ext.contents.begin(), ext.contents.end(), 101) == 1);

    const auto omega = preset_rq3_omega();
    CHECK(omega.omegas.size() == 11);
    CHECK(omega.omegas.back() == 1.0);
    const auto heat = preset_rq3_heatmap();
    CHECK(heat.deltas.front() == 1);
    CHECK(heat.deltas[1] == 11);
    CHECK(heat.deltas.back() == 991);
    CHECK(heat.deltas.size() == 100);
    CHECK(heat.grid().size() == 2 * 11 * 100);

    for (const auto& name : {"rq1", "rq2", "rq2-ext", "rq3-omega", "rq3-heatmap"}) CHECK_NOTHROW(preset_by_name(name).validate());
    CHECK_THROWS_AS(preset_by_name("rq4"), ConfigError);
}

TEST_CASE("run seeds are distinct and independent of grid order") {
    const auto rq1 = preset_rq1();
    std::set<std::uint64_t> seeds;
    for (const auto& g : rq1.grid())
        for (std::size_t r = 0; r < rq1.replications; ++r) {
            const auto cfg = rq1.config_for(g, r);
            CHECK_NOTHROW(cfg.validate());
            seeds.insert(cfg.seed);
        }
    CHECK(seeds.size() == 1000);

    auto reversed = rq1;
    std::reverse(reversed.alphas.begin(), reversed.alphas.end());
    std::reverse(reversed.distributions.begin(), reversed.distributions.end());
    for (const auto& g : reversed.grid()) CHECK(reversed.config_for(g, 4).seed == rq1.config_for(g, 4).seed);
}

TEST_CASE("in-memory sweep shape") {
    const auto spec = tiny_spec();
    const auto report = run_sweep(spec, {});
    CHECK(report.runs_executed == spec.run_count());
    CHECK(report.table.raw.size() == 2 * 2 * 2 * 3);
    CHECK(report.table.aggregate.size() == 2 * 2 * 2);
    CHECK(report.table.aggregate.front().distribution == "BDIC");
    for (const auto& row : report.table.aggregate) {
        CHECK(row.rep_count == 3);
        REQUIRE(row.likes_pct.has_value());
        CHECK(row.likes_pct->ci_low <= row.likes_pct->mean);
    }
    CHECK(parse_raw_csv(raw_csv(report.table.raw)) == report.table.raw);
}

TEST_CASE("worker count gives identical files") {
    const auto spec = tiny_spec();
    const auto a = scratch_dir("w1"), b = scratch_dir("w8");
    run_sweep(spec, {1, a, {}, {}});
    run_sweep(spec, {8, b, {}, {}});
    for (const char* f : {"raw.csv", "aggregate.csv", "manifest.json"}) {
        CAPTURE(f);
        CHECK(read_file(a / f) == read_file(b / f));
    }
    const auto raw = read_file(a / "raw.csv");
    CHECK(line_count(raw) == 1 + spec.run_count());
    CHECK(raw.rfind(kRawCsvHeader, 0) == 0);
    CHECK(line_count(read_file(a / "aggregate.csv")) == 1 + 8);
    const auto manifest = load_json_file(a / "manifest.json");
    CHECK(manifest.at("status") == "complete");
    CHECK(manifest.at("completed_points").size() == 8);
    CHECK(manifest.at("sweep") == to_json(spec));
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("resume skips completed work") {
    const auto spec = tiny_spec();
    const auto dir = scratch_dir("resume");
    const auto first = run_sweep(spec, {2, dir, {}, {}});
    const std::string raw = read_file(dir / "raw.csv");
    const auto again = run_sweep(spec, {2, dir, {}, {}});
    CHECK(again.runs_executed == 0);
    CHECK(again.runs_skipped == spec.run_count());
    CHECK(read_file(dir / "raw.csv") == raw);

    // Simulate an interruption: forget half of the completed points.
    auto manifest = load_json_file(dir / "manifest.json");
    auto& done = manifest.at("completed_points");
    done.erase(done.begin(), done.begin() + 4);
    manifest["status"] = "partial";
    write_file_atomic(dir / "manifest.json", manifest.dump(2));
    const auto partial = run_sweep(spec, {1, dir, {}, {}});
    CHECK(partial.runs_executed == 4 * spec.replications);
    CHECK(read_file(dir / "raw.csv") == raw);

    auto different = spec;
    different.master_seed += 1;
    CHECK_THROWS_AS(run_sweep(different, {1, dir, {}, {}}), ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("a failing run aborts its point, not the sweep") {
    const auto spec = tiny_spec();
    const auto dir = scratch_dir("failing");
    SweepOptions options{2, dir, {}, {}};
    options.runner = [](const SimulationConfig& c) -> RunResult {
        if (c.recommender.alpha == 2.0 && c.contents == 4) throw std::runtime_error("injected");
        return run(c, 1);
    };
    const auto report = run_sweep(spec, options);
    CHECK(report.failed.size() == 2);
    for (const auto& f : report.failed) CHECK(f.error == "injected");
    CHECK(report.table.aggregate.size() == 6);
    const auto manifest = load_json_file(dir / "manifest.json");
    CHECK(manifest.at("status") == "complete-with-failures");
    CHECK(manifest.at("failed_points").size() == 2);

    const auto retry = run_sweep(spec, {1, dir, {}, {}});
    CHECK(retry.runs_executed == 2 * spec.replications);
    CHECK(retry.failed.empty());
    CHECK(retry.table.aggregate.size() == 8);
    fs::remove_all(dir);

    auto bad = tiny_spec();
    bad.deltas = {30};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("aggregation of rows") {
    GridPoint p{InitialDistributionSpec::ndic(), 7.0, 3, 0.5, 5, 0.9};
    MetricSet m;
    m.likes_pct = 10;
    m.dispersion_pct_change = std::nullopt;
    m.viral_stance = 1.0;
    std::vector<RawRow> rows{make_raw_row(p, 0, 1, m)};
    m.likes_pct = 20;
    m.viral_stance = -1.0;
    rows.push_back(make_raw_row(p, 1, 2, m));
    m.viral_stance = 0.0;
    m.dispersion_pct_change = 4.0;
    rows.push_back(make_raw_row(p, 2, 3, m));
    const auto agg = aggregate_point(p, rows);
    CHECK(agg.likes_pct->mean == doctest::Approx(50.0 / 3));
    CHECK_FALSE(agg.md_pct_change.has_value());
    CHECK(agg.viral_stance_mode == 0.0);
    CHECK(agg.rep_count == 3);
    CHECK(rows[1].run_id == p.key() + ";rep=1");
    const std::string csv = aggregate_csv({agg});
    CHECK(csv.find("likes_pct_mean,likes_pct_std,likes_pct_ci_low,likes_pct_ci_high") != std::string::npos);
    CHECK(csv.find(",,,,") != std::string::npos);
}

TEST_CASE("run artifacts and curves") {
    SimulationConfig c;
    c.users = 20;
    c.steps = 30;
    c.contents = 5;
    c.trace.recommendations = true;
    c.trace.snapshot_interval = 10;
    const RunResult r = run(c);
    const auto dir = scratch_dir("artifacts");
    emit_run_artifacts(c, r, dir, {true, true, true});
    CHECK(line_count(read_file(dir / "likes_per_content.csv")) == 1 + c.contents);
    CHECK(line_count(read_file(dir / "recommendations.csv")) == 1 + c.users * c.steps);
    CHECK(line_count(read_file(dir / "opinions.csv")) == 1 + 4 * c.users);
    const auto summary = load_json_file(dir / "summary.json");
    CHECK(summary.at("config") == to_json(c));

    write_function_curves(dir);
    const auto watch = read_file(dir / "watch_rate.csv");
    CHECK(watch.find("\n0,5,0.5\n") != std::string::npos);
    CHECK(read_file(dir / "watch_score.csv").find("\n0.25,5,0.5\n") != std::string::npos);
    CHECK(read_file(dir / "engagement_payoffs.csv").find("\n0,1,0,0\n") != std::string::npos);
    fs::remove_all(dir);
}
