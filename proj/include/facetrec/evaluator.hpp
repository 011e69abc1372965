#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "facetrec/interaction_store.hpp"
#include "facetrec/profile.hpp"
#include "facetrec/split.hpp"

namespace facetrec {

/// Accuracy and timing of a single test user.
struct UserRecord {
    UserId user = 0;
    bool covered = false;
    double precision = 0.0;
    double recall = 0.0;
    double ndcg = 0.0;
    std::vector<double> ndcg_by_cutoff;  ///< cutoffs 1..k
    std::uint64_t latency_ns = 0;
};

/// Per-profile evaluation outcome.  Plain metrics average over every test
/// user, with uncovered users contributing 0; the normalized counterparts
/// divide the plain value by user_coverage and are absent when coverage is
/// zero.
struct ProfileReport {
    std::string profile;
    std::size_t k = 0;
    std::size_t test_user_count = 0;
    std::size_t covered_user_count = 0;
    double user_coverage = 0.0;
    double precision_at_k = 0.0;
    double recall_at_k = 0.0;
    double ndcg_at_k = 0.0;
    std::optional<double> precision_at_k_normalized;
    std::optional<double> recall_at_k_normalized;
    std::optional<double> ndcg_at_k_normalized;
    std::vector<double> ndcg_curve;  ///< plain nDCG at cutoffs 1..k
    double latency_mean_ms = 0.0;
    double latency_std_ms = 0.0;  ///< population standard deviation
    std::vector<UserRecord> records;  ///< one per test user, ascending user id
};

struct EvaluateOptions {
    std::size_t k = 10;
    /// Worker threads for the per-user loop.  Timings are taken inside the
    /// workers, so anything above 1 trades timing fidelity for throughput.
    std::size_t parallelism = 1;
};

/// Runs one profile over a split: one timed recommend() call per test user,
/// accuracy against that user's held-out items, aggregates per the
/// ProfileReport conventions.  Deterministic apart from the latency fields;
/// the aggregation is order-independent, so any parallelism level yields the
/// same accuracy numbers.
ProfileReport evaluate_profile(const InteractionStore& train, const TestSet& test,
                               const RecommenderProfile& profile,
                               const EvaluateOptions& options = {});

/// Convenience loop over a profile list, in the order given.
std::vector<ProfileReport> evaluate_profiles(const InteractionStore& train, const TestSet& test,
                                             const std::vector<RecommenderProfile>& profiles,
                                             const EvaluateOptions& options = {});

}  // namespace facetrec
