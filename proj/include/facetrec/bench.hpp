#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "facetrec/interaction_store.hpp"
#include "facetrec/profile.hpp"

namespace facetrec {

struct LatencyStats {
    std::size_t samples = 0;
    double mean_ms = 0.0;
    double std_ms = 0.0;  ///< population standard deviation
    double min_ms = 0.0;
    double max_ms = 0.0;
};

/// Settings for the full-versus-prefiltered latency comparison.
struct BenchConfig {
    std::vector<std::uint32_t> budgets = {20, 40, 60, 80, 100};
    std::size_t num_targets = 250;
    std::size_t k_items = 10;
    SimilarityMetric similarity = SimilarityMetric::CosineBinary;
    std::uint64_t seed = 1;
};

struct BenchReport {
    std::size_t num_targets = 0;
    std::size_t max_neighborhood = 0;  ///< over the sampled targets
    double mean_neighborhood = 0.0;
    LatencyStats full;
    std::vector<std::pair<std::uint32_t, LatencyStats>> prefiltered;  ///< by budget
};

/// Population statistics of one latency sample set, in milliseconds.
LatencyStats latency_stats(const std::vector<double>& samples_ms);

/// Uniform seeded sample (without replacement) of `count` user ids; every
/// user when count >= num_users.  Result sorted ascending.
std::vector<UserId> sample_targets(const InteractionStore& store, std::size_t count,
                                   std::uint64_t seed);

/// Times one full recommend() call per sampled target, first through the
/// classic full-neighborhood route, then once per pre-filter budget.  Also
/// reports neighborhood sizes so the workload's shape is visible next to the
/// timings.
BenchReport run_latency_comparison(const InteractionStore& store, const BenchConfig& config);

/// JSON rendering of the report for the CLI.
std::string bench_report_to_json(const BenchReport& report);

}  // namespace facetrec
