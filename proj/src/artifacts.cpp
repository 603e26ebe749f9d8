#include <string>

#include <json.hpp>

#include "recsim/config_io.hpp"
#include "recsim/csv.hpp"
#include "recsim/errors.hpp"
#include "recsim/experiments.hpp"
#include "recsim/model.hpp"
#include "recsim/recommender.hpp"

namespace recsim {

namespace {

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

}  // namespace

void emit_run_artifacts(const SimulationConfig& config, const RunResult& result, const std::filesystem::path& dir,
                        const ArtifactFlags& flags) {
    ensure_dir(dir);
    const std::size_t k = config.contents;

    if (flags.likes) {
        std::string likes = "content,stance,likes\n";
        for (std::size_t j = 0; j < k; ++j) {
            likes += std::to_string(j) + ',' + format_double(content_stance(j, k)) + ',' +
                     std::to_string(result.cumulative_likes[j]) + '\n';
        }
        write_file_atomic(dir / "likes_per_content.csv", likes);

        std::string steps = "t,likes\n";
        for (std::size_t t = 0; t < result.step_likes.size(); ++t) {
            steps += std::to_string(t) + ',' + std::to_string(result.step_likes[t]) + '\n';
        }
        write_file_atomic(dir / "likes_per_step.csv", steps);
    }

    if (flags.opinions) {
        std::string opinions = "t,user,opinion\n";
        for (const auto& snap : result.snapshots) {
            const std::string prefix = std::to_string(snap.step) + ',';
            for (std::size_t i = 0; i < snap.opinions.size(); ++i) {
                opinions += prefix + std::to_string(i) + ',' + format_double(snap.opinions[i]) + '\n';
            }
        }
        write_file_atomic(dir / "opinions.csv", opinions);
    }

    if (flags.recommendations && !result.recommendation_trace.empty()) {
        const std::size_t n = config.users;
        std::string trace = "t,user,content\n";
        trace.reserve(trace.size() + result.recommendation_trace.size() * 12);
        for (std::size_t idx = 0; idx < result.recommendation_trace.size(); ++idx) {
            trace += std::to_string(idx / n) + ',' + std::to_string(idx % n) + ',' +
                     std::to_string(result.recommendation_trace[idx]) + '\n';
        }
        write_file_atomic(dir / "recommendations.csv", trace);
    }

    const nlohmann::json summary = {
        {"code_version", code_version()},
        {"config", to_json(config)},
        {"metrics", to_json(result.metrics)},
        {"total_likes", result.total_likes},
        {"total_dislikes", result.total_dislikes},
        {"total_neutral", result.total_neutral},
        {"total_watch", result.total_watch},
    };
    write_file_atomic(dir / "summary.json", summary.dump(2) + "\n");
}

void write_function_curves(const std::filesystem::path& dir) {
    ensure_dir(dir);
    static constexpr double kSteepness[] = {1.0, 3.0, 5.0, 10.0};

    std::string payoffs = "x_bar,like,dislike,neutral\n";
    for (int i = -200; i <= 200; ++i) {
        const double gap = i / 100.0;
        const auto p = engagement_payoffs(gap, 0.0);
        payoffs += format_double(gap) + ',' + format_double(p.like) + ',' + format_double(p.dislike) + ',' +
                   format_double(p.neutral) + '\n';
    }
    write_file_atomic(dir / "engagement_payoffs.csv", payoffs);

    std::string watch = "v,gamma,w\n";
    for (double gamma : kSteepness) {
        for (int i = -100; i <= 100; ++i) {
            const double v = i / 100.0;
            watch += format_double(v) + ',' + format_double(gamma) + ',' + format_double(watch_rate(v, 1.0, gamma)) +
                     '\n';
        }
    }
    write_file_atomic(dir / "watch_rate.csv", watch);

    std::string score = "mean_watch,mu,b\n";
    for (double mu : kSteepness) {
        for (int i = 0; i <= 100; ++i) {
            const double w = i / 100.0;
            score += format_double(w) + ',' + format_double(mu) + ',' + format_double(watch_score(w, mu)) + '\n';
        }
    }
    write_file_atomic(dir / "watch_score.csv", score);
}

}  // namespace recsim
