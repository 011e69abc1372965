#include "facetrec/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "facetrec/prefilter.hpp"
#include "facetrec/random_util.hpp"
#include "facetrec/recommender.hpp"

namespace facetrec {
namespace {

using Clock = std::chrono::steady_clock;

double time_recommend_ms(Recommender& rec, UserId target, const RecommenderProfile& profile,
                         std::size_t k_items) {
    const auto t0 = Clock::now();
    const auto result = rec.recommend(target, profile, k_items);
    const auto t1 = Clock::now();
    (void)result;
    return static_cast<double>(
               std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()) /
           1e6;
}

}  // namespace

LatencyStats latency_stats(const std::vector<double>& samples_ms) {
    LatencyStats stats;
    stats.samples = samples_ms.size();
    if (samples_ms.empty()) return stats;
    double sum = 0.0;
    stats.min_ms = samples_ms.front();
    stats.max_ms = samples_ms.front();
    for (double s : samples_ms) {
        sum += s;
        stats.min_ms = std::min(stats.min_ms, s);
        stats.max_ms = std::max(stats.max_ms, s);
    }
    stats.mean_ms = sum / static_cast<double>(samples_ms.size());
    double var = 0.0;
    for (double s : samples_ms) {
        const double d = s - stats.mean_ms;
        var += d * d;
    }
    stats.std_ms = std::sqrt(var / static_cast<double>(samples_ms.size()));
    return stats;
}

std::vector<UserId> sample_targets(const InteractionStore& store, std::size_t count,
                                   std::uint64_t seed) {
    std::vector<UserId> users = store.user_ids();
    if (count >= users.size()) return users;
    std::mt19937_64 rng(seed);
    for (std::size_t j = 0; j < count; ++j) {
        const std::size_t swap_at = j + static_cast<std::size_t>(bounded_rand(rng, users.size() - j));
        std::swap(users[j], users[swap_at]);
    }
    users.resize(count);
    std::sort(users.begin(), users.end());
    return users;
}

BenchReport run_latency_comparison(const InteractionStore& store, const BenchConfig& config) {
    if (config.num_targets < 1) throw std::invalid_argument("num_targets must be >= 1");
    if (config.budgets.empty()) throw std::invalid_argument("at least one budget required");

    const std::vector<UserId> targets = sample_targets(store, config.num_targets, config.seed);

    BenchReport report;
    report.num_targets = targets.size();

    Recommender rec(store);
    OverlapCounter counter(store);
    std::size_t neighborhood_sum = 0;
    for (UserId t : targets) {
        const std::size_t n = counter.neighborhood_size(t);
        report.max_neighborhood = std::max(report.max_neighborhood, n);
        neighborhood_sum += n;
    }
    report.mean_neighborhood =
        static_cast<double>(neighborhood_sum) / static_cast<double>(targets.size());

    RecommenderProfile full;
    full.name = "cf_full";
    full.algorithm = Algorithm::CfFull;
    full.similarity = config.similarity;

    std::vector<double> samples;
    samples.reserve(targets.size());
    for (UserId t : targets) {
        samples.push_back(time_recommend_ms(rec, t, full, config.k_items));
    }
    report.full = latency_stats(samples);

    for (std::uint32_t budget : config.budgets) {
        RecommenderProfile pre;
        pre.name = "cf_ov" + std::to_string(budget);
        pre.algorithm = Algorithm::CfPrefiltered;
        pre.similarity = config.similarity;
        pre.candidate_budget_n = budget;
        samples.clear();
        for (UserId t : targets) {
            samples.push_back(time_recommend_ms(rec, t, pre, config.k_items));
        }
        report.prefiltered.emplace_back(budget, latency_stats(samples));
    }
    return report;
}

std::string bench_report_to_json(const BenchReport& report) {
    using json = nlohmann::json;
    const auto stats_json = [](const LatencyStats& s) {
        return json{{"samples", s.samples},
                    {"mean_ms", s.mean_ms},
                    {"std_ms", s.std_ms},
                    {"min_ms", s.min_ms},
                    {"max_ms", s.max_ms}};
    };
    json j;
    j["num_targets"] = report.num_targets;
    j["max_neighborhood"] = report.max_neighborhood;
    j["mean_neighborhood"] = report.mean_neighborhood;
    j["cf_full"] = stats_json(report.full);
    json pre = json::array();
    for (const auto& [budget, stats] : report.prefiltered) {
        json entry = stats_json(stats);
        entry["candidate_budget_n"] = budget;
        pre.push_back(entry);
    }
    j["cf_prefiltered"] = pre;
    return j.dump(2) + "\n";
}

}  // namespace facetrec
