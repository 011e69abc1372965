#include "facetrec/evaluator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ratio>
#include <stdexcept>
#include <thread>

#include "facetrec/metrics.hpp"
#include "facetrec/recommender.hpp"

namespace facetrec {
namespace {

using Clock = std::chrono::steady_clock;
static_assert(std::ratio_less_equal<Clock::period, std::micro>::value,
              "timer resolution must be 1 microsecond or finer");

void evaluate_range(const InteractionStore& train, const RecommenderProfile& profile,
                    std::size_t k, const std::vector<const TestSet::value_type*>& entries,
                    std::size_t begin, std::size_t end, std::vector<UserRecord>& records) {
    Recommender rec(train);
    std::vector<ItemId> recommended;
    for (std::size_t i = begin; i < end; ++i) {
        const UserId user = entries[i]->first;
        const std::vector<ItemId>& relevant = entries[i]->second;

        const auto t0 = Clock::now();
        const std::vector<ScoredItem> scored = rec.recommend(user, profile, k);
        const auto t1 = Clock::now();

        recommended.clear();
        for (const ScoredItem& s : scored) recommended.push_back(s.item);

        UserRecord& r = records[i];
        r.user = user;
        r.latency_ns = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
        r.covered = !recommended.empty();
        r.precision = precision_at(recommended, relevant, k);
        r.recall = recall_at(recommended, relevant, k);
        r.ndcg_by_cutoff.resize(k);
        for (std::size_t cutoff = 1; cutoff <= k; ++cutoff) {
            r.ndcg_by_cutoff[cutoff - 1] = ndcg_at(recommended, relevant, cutoff);
        }
        r.ndcg = r.ndcg_by_cutoff[k - 1];
    }
}

}  // namespace

ProfileReport evaluate_profile(const InteractionStore& train, const TestSet& test,
                               const RecommenderProfile& profile,
                               const EvaluateOptions& options) {
    if (options.k < 1) throw std::invalid_argument("k must be >= 1");
    if (options.parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");

    ProfileReport report;
    report.profile = profile.name;
    report.k = options.k;
    report.test_user_count = test.size();

    // std::map iterates ascending, so records line up with ascending user id.
    std::vector<const TestSet::value_type*> entries;
    entries.reserve(test.size());
    for (const auto& kv : test) entries.push_back(&kv);
    report.records.resize(entries.size());

    const std::size_t workers = std::min(std::max<std::size_t>(options.parallelism, 1),
                                         std::max<std::size_t>(entries.size(), 1));
    if (workers <= 1) {
        evaluate_range(train, profile, options.k, entries, 0, entries.size(), report.records);
    } else {
        // Contiguous blocks; each worker owns its slots, so no locking.
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (entries.size() + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(begin + chunk, entries.size());
            if (begin >= end) break;
            pool.emplace_back([&, begin, end] {
                evaluate_range(train, profile, options.k, entries, begin, end, report.records);
            });
        }
        for (std::thread& t : pool) t.join();
    }

    // Sequential reduction in record order: bitwise-reproducible regardless
    // of how many workers filled the records.
    double sum_p = 0.0, sum_r = 0.0, sum_n = 0.0;
    std::vector<double> sum_curve(options.k, 0.0);
    double sum_lat_ms = 0.0;
    std::size_t covered = 0;
    for (const UserRecord& r : report.records) {
        sum_p += r.precision;
        sum_r += r.recall;
        sum_n += r.ndcg;
        for (std::size_t c = 0; c < options.k; ++c) sum_curve[c] += r.ndcg_by_cutoff[c];
        sum_lat_ms += static_cast<double>(r.latency_ns) / 1e6;
        if (r.covered) ++covered;
    }
    report.covered_user_count = covered;
    const auto n = static_cast<double>(report.test_user_count);
    if (report.test_user_count > 0) {
        report.user_coverage = static_cast<double>(covered) / n;
        report.precision_at_k = sum_p / n;
        report.recall_at_k = sum_r / n;
        report.ndcg_at_k = sum_n / n;
        report.ndcg_curve.resize(options.k);
        for (std::size_t c = 0; c < options.k; ++c) report.ndcg_curve[c] = sum_curve[c] / n;
        report.latency_mean_ms = sum_lat_ms / n;
        double var = 0.0;
        for (const UserRecord& r : report.records) {
            const double d = static_cast<double>(r.latency_ns) / 1e6 - report.latency_mean_ms;
            var += d * d;
        }
        report.latency_std_ms = std::sqrt(var / n);
        if (report.user_coverage > 0.0) {
            report.precision_at_k_normalized = report.precision_at_k / report.user_coverage;
            report.recall_at_k_normalized = report.recall_at_k / report.user_coverage;
            report.ndcg_at_k_normalized = report.ndcg_at_k / report.user_coverage;
        }
    } else {
        report.ndcg_curve.assign(options.k, 0.0);
    }
    return report;
}

std::vector<ProfileReport> evaluate_profiles(const InteractionStore& train, const TestSet& test,
                                             const std::vector<RecommenderProfile>& profiles,
                                             const EvaluateOptions& options) {
    std::vector<ProfileReport> reports;
    reports.reserve(profiles.size());
    for (const RecommenderProfile& p : profiles) {
        reports.push_back(evaluate_profile(train, test, p, options));
    }
    return reports;
}

}  // namespace facetrec
