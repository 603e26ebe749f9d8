#include "recsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "recsim/errors.hpp"
#include "recsim/rng.hpp"
#include "recsim/simd/kernels.hpp"

namespace recsim {

void SimulationConfig::validate() const {
    if (users < 2) throw ConfigError("n (users) must be at least 2");
    if (steps < 1) throw ConfigError("tau (steps) must be at least 1");
    if (contents < 2) throw ConfigError("k (contents) must be at least 2");
    if (contents > std::numeric_limits<std::uint16_t>::max()) throw ConfigError("k (contents) must be at most 65535");
    recommender.validate();
    if (recommender.delta > steps) throw ConfigError("delta must not exceed tau");
    if (!(susceptibility >= 0.0 && susceptibility <= 1.0)) throw ConfigError("lambda must lie in [0, 1]");
    if (!(rationality >= 0.0) || !std::isfinite(rationality)) throw ConfigError("beta must be finite and >= 0");
    model.validate();
    initial.validate();
}

Simulation::Simulation(SimulationConfig config, std::size_t workers)
    : config_((config.validate(), std::move(config))),
      workers_(1),
      catalog_(config_.contents),
      ledger_(config_.users, config_.contents, config_.model.mu),
      window_(config_.contents, config_.recommender.delta),
      virality_(config_.contents, 0.0),
      cumulative_likes_(config_.contents, 0) {
    CounterStream init_stream(config_.seed, kInitStream);
    initial_ = sample_opinions(config_.initial, config_.users, init_stream);
    opinions_ = initial_;
    watch_totals_.assign(config_.users, 0.0);
    step_likes_.reserve(config_.steps * config_.contents);
    step_like_totals_.reserve(config_.steps);
    if (config_.trace.recommendations) trace_.assign(config_.users * config_.steps, 0);
    set_workers(workers);
    take_snapshot();
}

void Simulation::set_workers(std::size_t workers) {
    workers_ = std::clamp<std::size_t>(workers, 1, config_.users);
    scratch_.assign(workers_, WorkerScratch{});
    for (auto& s : scratch_) {
        s.staged_likes.assign(config_.contents, 0);
        s.payoffs.assign(config_.contents, 0.0);
        s.probabilities.assign(config_.contents, 0.0);
    }
}

void Simulation::recommendation_distribution(std::size_t user, std::span<double> out) const {
    if (out.size() != config_.contents) throw std::invalid_argument("distribution buffer length must equal k");
    std::vector<double> virality(config_.contents);
    window_.virality(virality);
    std::vector<double> payoffs(config_.contents);
    simd::fuse_payoffs(ledger_.content_scores(user), virality, config_.recommender.omega, payoffs);
    simd::softmax(payoffs, config_.recommender.alpha, out);
}

void Simulation::advance_users(std::size_t begin, std::size_t end, WorkerScratch& scratch) {
    const auto& rp = config_.recommender;
    const auto t = static_cast<std::int64_t>(step_);
    for (std::size_t i = begin; i < end; ++i) {
        const auto draws = CounterStream(config_.seed, i).block(step_);

        simd::fuse_payoffs(ledger_.content_scores(i), virality_, rp.omega, scratch.payoffs);
        simd::softmax(scratch.payoffs, rp.alpha, scratch.probabilities);
        const std::size_t content = recommendation_from_uniform(scratch.probabilities, unit_interval(draws[0]));

        const double opinion = opinions_[i];
        const double stance = catalog_.stances()[content];
        const double w = watch_rate(opinion, stance, config_.model.gamma);
        const auto probs = engagement_probabilities(engagement_payoffs(opinion, stance), config_.rationality);
        Engagement decision = engagement_from_uniform(probs, unit_interval(draws[1]));
        if (override_) decision = override_(i, decision);

        const UserState user{initial_[i], opinion, config_.susceptibility, config_.rationality};
        opinions_[i] = update_opinion(user, stance, w);
        record_interaction(ledger_, scratch.staged_likes, i, content, w, decision, t);
        watch_totals_[i] += w;

        switch (decision) {
            case Engagement::like:
                ++scratch.likes;
                break;
            case Engagement::dislike:
                ++scratch.dislikes;
                break;
            case Engagement::neutral:
                ++scratch.neutral;
                break;
        }
        if (!trace_.empty()) trace_[step_ * config_.users + i] = static_cast<std::uint16_t>(content);
    }
}

void Simulation::step() {
    if (finished()) throw std::logic_error("simulation already ran all " + std::to_string(config_.steps) + " steps");
    window_.virality(virality_);

    const std::size_t n = config_.users;
    if (workers_ == 1) {
        advance_users(0, n, scratch_[0]);
    } else {
        std::vector<std::exception_ptr> errors(workers_);
        {
            std::vector<std::jthread> threads;
            threads.reserve(workers_ - 1);
            for (std::size_t w = 1; w < workers_; ++w) {
                threads.emplace_back([this, w, n, &errors] {
                    try {
                        advance_users(n * w / workers_, n * (w + 1) / workers_, scratch_[w]);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
            try {
                advance_users(0, n / workers_, scratch_[0]);
            } catch (...) {
                errors[0] = std::current_exception();
            }
        }
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    // Barrier: merge staged likes and commit the completed timestep.
    const std::size_t k = config_.contents;
    const std::size_t offset = step_likes_.size();
    step_likes_.resize(offset + k, 0);
    std::span<std::uint32_t> merged(step_likes_.data() + offset, k);
    std::uint32_t step_total = 0;
    for (auto& s : scratch_) {
        for (std::size_t j = 0; j < k; ++j) {
            merged[j] += s.staged_likes[j];
            s.staged_likes[j] = 0;
        }
        likes_ += s.likes;
        dislikes_ += s.dislikes;
        neutral_ += s.neutral;
        s.likes = s.dislikes = s.neutral = 0;
    }
    for (std::size_t j = 0; j < k; ++j) {
        cumulative_likes_[j] += merged[j];
        step_total += merged[j];
    }
    step_like_totals_.push_back(step_total);
    window_.commit(merged);
    ++step_;

    const std::size_t interval = config_.trace.snapshot_interval;
    if (finished() || (interval > 0 && step_ % interval == 0)) take_snapshot();
}

void Simulation::take_snapshot() { snapshots_.push_back({step_, opinions_}); }

RunResult Simulation::finish() {
    while (!finished()) step();

    RunResult result;
    result.initial_opinions = initial_;
    result.final_opinions = opinions_;
    result.cumulative_likes = cumulative_likes_;
    result.step_likes = step_like_totals_;
    result.total_likes = likes_;
    result.total_dislikes = dislikes_;
    result.total_neutral = neutral_;
    double watch = 0.0;
    for (double w : watch_totals_) watch += w;
    result.total_watch = watch;
    result.metrics = compute_metrics(config_, initial_, opinions_, cumulative_likes_, likes_, watch);
    result.recommendation_trace = trace_;
    result.snapshots = snapshots_;
    return result;
}

RunResult run(const SimulationConfig& config, std::size_t workers) {
    Simulation sim(config, workers);
    return sim.finish();
}

MetricSet compute_metrics(const SimulationConfig& config, std::span<const double> initial,
                          std::span<const double> final_opinions, std::span<const std::uint64_t> cumulative_likes,
                          std::uint64_t total_likes, double total_watch) {
    MetricSet m;
    m.likes_pct = likes_pct(total_likes, config.users, config.steps);
    m.watch_rate_pct = watch_rate_pct(total_watch, config.users, config.steps);
    m.dispersion_initial = dispersion(initial);
    m.dispersion_final = dispersion(final_opinions);
    m.radicalisation_initial = radicalisation(initial);
    m.radicalisation_final = radicalisation(final_opinions);
    m.dispersion_pct_change = pct_change(m.dispersion_final, m.dispersion_initial);
    m.radicalisation_pct_change = pct_change(m.radicalisation_final, m.radicalisation_initial);
    const Dominance d = dominance(cumulative_likes);
    m.dominance = d.proportion;
    m.viral_index = d.index;
    m.viral_stance = content_stance(d.index, cumulative_likes.size());
    return m;
}

}  // namespace recsim
