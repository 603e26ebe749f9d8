#include "recsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "recsim/config_io.hpp"
#include "recsim/csv.hpp"
#include "recsim/errors.hpp"
#include "recsim/rng.hpp"

#ifndef RECSIM_VERSION
#define RECSIM_VERSION "unknown"
#endif

namespace recsim {

using nlohmann::json;

std::string code_version() { return RECSIM_VERSION; }

std::string GridPoint::key() const {
    return "dist=" + distribution.label() + ";alpha=" + format_double(alpha) + ";k=" + std::to_string(contents) +
           ";omega=" + format_double(omega) + ";delta=" + std::to_string(delta) + ";lambda=" + format_double(lambda);
}

std::uint64_t run_seed(std::uint64_t master_seed, const std::string& point_key, std::size_t replication) {
    std::uint64_t h = mix64(master_seed);
    h = mix64(h ^ fnv1a64(point_key));
    return mix64(h + static_cast<std::uint64_t>(replication));
}

// ---------------------------------------------------------------------------
// SweepSpec

namespace {

template <class T>
void require_axis(const std::vector<T>& axis, const char* name) {
    if (axis.empty()) throw ConfigError(std::string("sweep axis '") + name + "' is empty");
    std::set<T> seen(axis.begin(), axis.end());
    if (seen.size() != axis.size()) throw ConfigError(std::string("sweep axis '") + name + "' repeats a value");
}

}  // namespace

void SweepSpec::validate() const {
    if (replications < 1) throw ConfigError("replications must be at least 1");
    if (distributions.empty()) throw ConfigError("sweep needs at least one initial distribution");
    std::set<std::string> labels;
    for (const auto& d : distributions) {
        d.validate();
        if (!labels.insert(d.label()).second) throw ConfigError("distribution listed twice: " + d.label());
    }
    require_axis(alphas, "alpha");
    require_axis(contents, "k");
    require_axis(omegas, "omega");
    require_axis(deltas, "delta");
    for (const auto& point : grid()) config_for(point, 0).validate();
}

std::vector<GridPoint> SweepSpec::grid() const {
    std::vector<GridPoint> points;
    points.reserve(distributions.size() * alphas.size() * contents.size() * omegas.size() * deltas.size());
    for (const auto& d : distributions)
        for (double a : alphas)
            for (std::size_t k : contents)
                for (double w : omegas)
                    for (std::size_t delta : deltas) points.push_back({d, a, k, w, delta, lambda});
    return points;
}

std::size_t SweepSpec::run_count() const {
    return distributions.size() * alphas.size() * contents.size() * omegas.size() * deltas.size() * replications;
}

SimulationConfig SweepSpec::config_for(const GridPoint& point, std::size_t replication) const {
    SimulationConfig c = base;
    c.initial = point.distribution;
    c.recommender.alpha = point.alpha;
    c.contents = point.contents;
    c.recommender.omega = point.omega;
    c.recommender.delta = point.delta;
    c.susceptibility = point.lambda;
    c.seed = run_seed(master_seed, point.key(), replication);
    return c;
}

// ---------------------------------------------------------------------------
// Presets

namespace {

std::vector<double> tenths() {
    std::vector<double> out;
    for (int i = 0; i <= 10; ++i) out.push_back(i / 10.0);
    return out;
}

SweepSpec preset_base(std::string name) {
    SweepSpec s;
    s.name = std::move(name);
    s.base = SimulationConfig{};  // n = 500, tau = 1000, beta = 9, gamma = mu = 5, lambda = 0.9
    s.lambda = s.base.susceptibility;
    s.replications = 50;
    return s;
}

}  // namespace

SweepSpec preset_rq1() {
    SweepSpec s = preset_base("rq1");
    for (int a = 2; a <= 20; a += 2) s.alphas.push_back(a);
    s.contents = {21};
    s.omegas = {0.5};
    s.deltas = {5};
    return s;
}

SweepSpec preset_rq2(bool extended) {
    SweepSpec s = preset_base(extended ? "rq2-ext" : "rq2");
    s.alphas = {7.0};
    s.contents = {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 21};
    if (extended) {
        s.contents.push_back(41);
        s.contents.push_back(101);
    }
    s.omegas = {0.5};
    s.deltas = {5};
    return s;
}

SweepSpec preset_rq3_omega() {
    SweepSpec s = preset_base("rq3-omega");
    s.alphas = {7.0};
    s.contents = {11};
    s.omegas = tenths();
    s.deltas = {5};
    return s;
}

SweepSpec preset_rq3_heatmap() {
    SweepSpec s = preset_base("rq3-heatmap");
    s.alphas = {7.0};
    s.contents = {11};
    s.omegas = tenths();
    s.deltas = {1};
    for (std::size_t d = 11; d <= s.base.steps; d += 10) s.deltas.push_back(d);
    return s;
}

SweepSpec preset_by_name(const std::string& name) {
    if (name == "rq1") return preset_rq1();
    if (name == "rq2") return preset_rq2(false);
    if (name == "rq2-ext") return preset_rq2(true);
    if (name == "rq3-omega") return preset_rq3_omega();
    if (name == "rq3-heatmap") return preset_rq3_heatmap();
    throw ConfigError("unknown preset '" + name + "' (expected rq1, rq2, rq2-ext, rq3-omega or rq3-heatmap)");
}

// ---------------------------------------------------------------------------
// Rows and aggregation

RawRow make_raw_row(const GridPoint& point, std::size_t replication, std::uint64_t seed, const MetricSet& m) {
    return RawRow{
        point.key() + ";rep=" + std::to_string(replication),
        replication,
        seed,
        point.distribution.label(),
        point.alpha,
        point.contents,
        point.omega,
        point.delta,
        point.lambda,
        m.likes_pct,
        m.watch_rate_pct,
        m.dispersion_initial,
        m.dispersion_final,
        m.radicalisation_initial,
        m.radicalisation_final,
        m.dispersion_pct_change,
        m.radicalisation_pct_change,
        m.dominance,
        m.viral_stance,
    };
}

namespace {

std::optional<AggregateStat> maybe_aggregate(const std::vector<double>& values) {
    if (values.size() < 2) return std::nullopt;
    return aggregate(values);
}

double modal_stance(const std::vector<RawRow>& rows) {
    std::map<double, std::size_t> counts;
    for (const auto& r : rows) ++counts[r.viral_stance];
    double best = 0.0;
    std::size_t best_count = 0;
    for (const auto& [stance, count] : counts) {
        const bool better = count > best_count ||
                            (count == best_count && std::fabs(stance) < std::fabs(best));
        if (better) {
            best = stance;
            best_count = count;
        }
    }
    return best;
}

auto sort_key(const RawRow& r) {
    return std::tie(r.distribution, r.alpha, r.contents, r.omega, r.delta, r.lambda, r.replication);
}

auto sort_key(const AggregateRow& r) {
    return std::tie(r.distribution, r.alpha, r.contents, r.omega, r.delta, r.lambda);
}

}  // namespace

AggregateRow aggregate_point(const GridPoint& point, const std::vector<RawRow>& rows) {
    std::vector<double> likes, wr, md, mr, mdc, mrc, dom;
    for (const auto& r : rows) {
        likes.push_back(r.likes_pct);
        wr.push_back(r.wr_pct);
        md.push_back(r.md_tau);
        mr.push_back(r.mr_tau);
        if (r.md_pct_change) mdc.push_back(*r.md_pct_change);
        if (r.mr_pct_change) mrc.push_back(*r.mr_pct_change);
        dom.push_back(r.dominance);
    }
    return AggregateRow{
        point.distribution.label(),
        point.alpha,
        point.contents,
        point.omega,
        point.delta,
        point.lambda,
        maybe_aggregate(likes),
        maybe_aggregate(wr),
        maybe_aggregate(md),
        maybe_aggregate(mr),
        maybe_aggregate(mdc),
        maybe_aggregate(mrc),
        maybe_aggregate(dom),
        modal_stance(rows),
        rows.size(),
    };
}

// ---------------------------------------------------------------------------
// CSV

std::string raw_csv(const std::vector<RawRow>& rows) {
    std::string out = kRawCsvHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += r.run_id + ',' + std::to_string(r.seed) + ',' + r.distribution + ',' + format_double(r.alpha) + ',' +
               std::to_string(r.contents) + ',' + format_double(r.omega) + ',' + std::to_string(r.delta) + ',' +
               format_double(r.lambda) + ',' + format_double(r.likes_pct) + ',' + format_double(r.wr_pct) + ',' +
               format_double(r.md_0) + ',' + format_double(r.md_tau) + ',' + format_double(r.mr_0) + ',' +
               format_double(r.mr_tau) + ',' + format_optional(r.md_pct_change) + ',' +
               format_optional(r.mr_pct_change) + ',' + format_double(r.dominance) + ',' +
               format_double(r.viral_stance) + '\n';
    }
    return out;
}

std::vector<RawRow> parse_raw_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kRawCsvHeader) throw ConfigError("raw CSV header mismatch");
    std::vector<RawRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 18) throw ConfigError("raw CSV row has " + std::to_string(f.size()) + " fields");
        const auto rep_pos = f[0].rfind(";rep=");
        if (rep_pos == std::string::npos) throw ConfigError("run_id lacks a replication suffix: " + f[0]);
        RawRow r{};
        r.run_id = f[0];
        r.replication = static_cast<std::size_t>(parse_double(f[0].substr(rep_pos + 5)));
        r.seed = std::stoull(f[1]);
        r.distribution = f[2];
        r.alpha = parse_double(f[3]);
        r.contents = static_cast<std::size_t>(parse_double(f[4]));
        r.omega = parse_double(f[5]);
        r.delta = static_cast<std::size_t>(parse_double(f[6]));
        r.lambda = parse_double(f[7]);
        r.likes_pct = parse_double(f[8]);
        r.wr_pct = parse_double(f[9]);
        r.md_0 = parse_double(f[10]);
        r.md_tau = parse_double(f[11]);
        r.mr_0 = parse_double(f[12]);
        r.mr_tau = parse_double(f[13]);
        r.md_pct_change = parse_optional(f[14]);
        r.mr_pct_change = parse_optional(f[15]);
        r.dominance = parse_double(f[16]);
        r.viral_stance = parse_double(f[17]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string aggregate_csv(const std::vector<AggregateRow>& rows) {
    static constexpr const char* metrics[] = {"likes_pct",     "wr_pct",        "md_tau",   "mr_tau",
                                              "md_pct_change", "mr_pct_change", "dominance"};
    std::string out = "distribution,alpha,k,omega,delta,lambda";
    for (const char* m : metrics) {
        for (const char* s : {"_mean", "_std", "_ci_low", "_ci_high"}) out += std::string(",") + m + s;
    }
    out += ",viral_stance_mode,rep_count\n";
    for (const auto& r : rows) {
        out += r.distribution + ',' + format_double(r.alpha) + ',' + std::to_string(r.contents) + ',' +
               format_double(r.omega) + ',' + std::to_string(r.delta) + ',' + format_double(r.lambda);
        for (const auto* stat : {&r.likes_pct, &r.wr_pct, &r.md_tau, &r.mr_tau, &r.md_pct_change,
                                 &r.mr_pct_change, &r.dominance}) {
            if (*stat) {
                out += ',' + format_double((*stat)->mean) + ',' + format_double((*stat)->std) + ',' +
                       format_double((*stat)->ci_low) + ',' + format_double((*stat)->ci_high);
            } else {
                out += ",,,,";
            }
        }
        out += ',' + format_double(r.viral_stance_mode) + ',' + std::to_string(r.rep_count) + '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sweep execution

namespace {

constexpr const char* kManifestFormat = "recsim-sweep/1";
constexpr const char* kSeedScheme =
    "run seed = mix64(mix64(mix64(master_seed) ^ fnv1a64(point_key)) + replication); "
    "user i at timestep t draws Philox4x32-10 block (counter = [t, i], key = mix64(run seed)); "
    "initial opinions use stream id 2^64-1";

struct PointState {
    GridPoint point;
    std::string key;
    std::vector<RawRow> rows;  // indexed by replication
    std::atomic<std::size_t> remaining{0};
    std::atomic<bool> failed{false};
    std::string error;
    bool restored = false;
};

class SweepWriter {
public:
    SweepWriter(const SweepSpec& spec, std::filesystem::path dir) : spec_(spec), dir_(std::move(dir)) {}

    bool enabled() const { return !dir_.empty(); }
    std::filesystem::path manifest_path() const { return dir_ / "manifest.json"; }
    std::filesystem::path journal_path() const { return dir_ / "raw.journal.csv"; }

    json manifest(const std::set<std::string>& completed, const std::map<std::string, std::string>& failed,
                  bool finished) const {
        json failed_json = json::array();
        for (const auto& [key, err] : failed) failed_json.push_back({{"key", key}, {"error", err}});
        const std::size_t points = spec_.run_count() / spec_.replications;
        return {
            {"format", kManifestFormat},
            {"code_version", code_version()},
            {"sweep", to_json(spec_)},
            {"seed_scheme", kSeedScheme},
            {"grid_points", points},
            {"runs_total", spec_.run_count()},
            {"completed_points", std::vector<std::string>(completed.begin(), completed.end())},
            {"failed_points", failed_json},
            {"status", finished ? (failed.empty() ? "complete" : "complete-with-failures") : "partial"},
            {"files", {{"raw", "raw.csv"}, {"aggregate", "aggregate.csv"}, {"journal", "raw.journal.csv"}}},
        };
    }

    void write_manifest(const json& m) const { write_file_atomic(manifest_path(), m.dump(2) + "\n"); }

    void append_journal(const std::vector<RawRow>& rows) const {
        const bool fresh = !std::filesystem::exists(journal_path());
        std::ofstream out(journal_path(), std::ios::binary | std::ios::app);
        if (!out) throw IoError("cannot append to " + journal_path().string());
        std::string text = raw_csv(rows);
        if (!fresh) text.erase(0, text.find('\n') + 1);
        out << text;
        out.flush();
        if (!out) throw IoError("write failed: " + journal_path().string());
    }

private:
    const SweepSpec& spec_;
    std::filesystem::path dir_;
};

}  // namespace

SweepReport run_sweep(const SweepSpec& spec, const SweepOptions& options) {
    spec.validate();
    const std::vector<GridPoint> grid = spec.grid();
    std::vector<std::unique_ptr<PointState>> points;
    std::map<std::string, PointState*> by_key;
    for (const auto& g : grid) {
        auto state = std::make_unique<PointState>();
        state->point = g;
        state->key = g.key();
        state->rows.resize(spec.replications);
        by_key[state->key] = state.get();
        points.push_back(std::move(state));
    }

    SweepWriter writer(spec, options.out_dir);
    std::set<std::string> completed;
    std::map<std::string, std::string> failed;
    SweepReport report;

    if (writer.enabled()) {
        std::error_code ec;
        std::filesystem::create_directories(options.out_dir, ec);
        if (ec) throw IoError("cannot create output directory " + options.out_dir.string() + ": " + ec.message());

        if (std::filesystem::exists(writer.manifest_path())) {
            const json previous = load_json_file(writer.manifest_path());
            if (previous.value("format", "") != kManifestFormat || previous.at("sweep") != to_json(spec)) {
                throw ConfigError("output directory " + options.out_dir.string() +
                                  " holds results of a different sweep");
            }
            std::map<std::string, std::vector<RawRow>> journal_rows;
            if (std::filesystem::exists(writer.journal_path())) {
                for (auto& row : parse_raw_csv(read_file(writer.journal_path()))) {
                    const std::string key = row.run_id.substr(0, row.run_id.rfind(";rep="));
                    journal_rows[key].push_back(std::move(row));
                }
            }
            for (const auto& key : previous.at("completed_points")) {
                const auto it = by_key.find(key.get<std::string>());
                if (it == by_key.end()) continue;
                PointState& st = *it->second;
                std::vector<bool> have(spec.replications, false);
                for (const auto& row : journal_rows[st.key]) {
                    if (row.replication < spec.replications) {
                        st.rows[row.replication] = row;
                        have[row.replication] = true;
                    }
                }
                if (std::all_of(have.begin(), have.end(), [](bool b) { return b; })) {
                    st.restored = true;
                    completed.insert(st.key);
                }
            }
        }
        writer.write_manifest(writer.manifest(completed, failed, false));
    }

    struct Task {
        PointState* point;
        std::size_t replication;
    };
    std::vector<Task> tasks;
    for (auto& p : points) {
        if (p->restored) {
            report.runs_skipped += spec.replications;
            continue;
        }
        p->remaining = spec.replications;
        for (std::size_t r = 0; r < spec.replications; ++r) tasks.push_back({p.get(), r});
    }

    std::mutex mutex;
    std::exception_ptr io_failure;
    std::atomic<std::size_t> next{0};
    std::size_t done = report.runs_skipped;
    const std::size_t total = spec.run_count();

    auto finish_point = [&](PointState& st) {
        // Called with `mutex` held.
        if (st.failed) {
            failed[st.key] = st.error;
        } else {
            completed.insert(st.key);
            if (writer.enabled()) {
                writer.append_journal(st.rows);
                writer.write_manifest(writer.manifest(completed, failed, false));
            }
        }
    };

    auto worker = [&] {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= tasks.size()) return;
            Task task = tasks[idx];
            PointState& st = *task.point;
            if (!st.failed) {
                try {
                    const SimulationConfig cfg = spec.config_for(st.point, task.replication);
                    const RunResult result = options.runner ? options.runner(cfg) : run(cfg, 1);
                    st.rows[task.replication] = make_raw_row(st.point, task.replication, cfg.seed, result.metrics);
                } catch (const std::exception& e) {
                    std::lock_guard lock(mutex);
                    if (!st.failed.exchange(true)) st.error = e.what();
                }
            }
            std::lock_guard lock(mutex);
            ++report.runs_executed;
            ++done;
            if (st.remaining.fetch_sub(1) == 1) {
                try {
                    finish_point(st);
                } catch (...) {
                    if (!io_failure) io_failure = std::current_exception();
                }
            }
            if (options.progress) options.progress(done, total);
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(options.workers, tasks.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (io_failure) std::rethrow_exception(io_failure);

    for (const auto& p : points) {
        if (!completed.contains(p->key)) continue;
        report.table.raw.insert(report.table.raw.end(), p->rows.begin(), p->rows.end());
        report.table.aggregate.push_back(aggregate_point(p->point, p->rows));
    }
    std::sort(report.table.raw.begin(), report.table.raw.end(),
              [](const RawRow& a, const RawRow& b) { return sort_key(a) < sort_key(b); });
    std::sort(report.table.aggregate.begin(), report.table.aggregate.end(),
              [](const AggregateRow& a, const AggregateRow& b) { return sort_key(a) < sort_key(b); });
    for (const auto& [key, err] : failed) report.failed.push_back({key, err});

    if (writer.enabled()) {
        write_file_atomic(options.out_dir / "raw.csv", raw_csv(report.table.raw));
        write_file_atomic(options.out_dir / "aggregate.csv", aggregate_csv(report.table.aggregate));
        writer.write_manifest(writer.manifest(completed, failed, true));
    }
    return report;
}

}  // namespace recsim
