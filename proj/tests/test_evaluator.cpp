#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "facetrec/evaluator.hpp"
#include "facetrec/metrics.hpp"
#include "facetrec/recommender.hpp"
#include "facetrec/split.hpp"
#include "facetrec/synthetic.hpp"
#include "test_util.hpp"

using namespace facetrec;

namespace {

RecommenderProfile mp_profile() {
    RecommenderProfile p;
    p.name = "mp";
    p.algorithm = Algorithm::MostPopular;
    return p;
}

RecommenderProfile full_profile() {
    RecommenderProfile p;
    p.name = "cf_full";
    p.algorithm = Algorithm::CfFull;
    return p;
}

RecommenderProfile ov_profile(std::uint32_t n) {
    RecommenderProfile p;
    p.name = "cf_ov" + std::to_string(n);
    p.algorithm = Algorithm::CfPrefiltered;
    p.candidate_budget_n = n;
    return p;
}

/// 20 users whose histories are pairwise disjoint: 12 private items each.
InteractionStore disjoint_store() {
    InteractionStore store;
    for (UserId u = 1; u <= 20; ++u) {
        for (ItemId i = 0; i < 12; ++i) store.add_interaction(u, u * 1000 + i);
    }
    return store;
}

InteractionStore connected_store() {
    SyntheticSpec spec;
    spec.num_users = 400;
    spec.num_items = 120;
    spec.min_interactions_per_user = 6;
    spec.max_interactions_per_user = 60;
    spec.count_shape = 1.1;
    spec.popularity_exponent = 0.8;
    spec.seed = 2024;
    return generate_synthetic(spec);
}

}  // namespace

TEST_CASE("evaluate rejects invalid options") {
    const InteractionStore store = disjoint_store();
    const SplitResult sp = split(store, 12, 10, 1);
    EvaluateOptions options;
    options.k = 0;
    CHECK_THROWS_AS(evaluate_profile(sp.train, sp.test, mp_profile(), options),
                    std::invalid_argument);
    options.k = 10;
    options.parallelism = 0;
    CHECK_THROWS_AS(evaluate_profile(sp.train, sp.test, mp_profile(), options),
                    std::invalid_argument);
}

TEST_CASE("a profile that cannot recommend yields zero coverage and absent normalized metrics") {
    const InteractionStore store = disjoint_store();
    const SplitResult sp = split(store, 12, 10, 7);
    REQUIRE(sp.test.size() == 20);
    // Histories are disjoint, so CF finds no neighbors for anyone.
    const ProfileReport report = evaluate_profile(sp.train, sp.test, full_profile());
    CHECK(report.user_coverage == 0.0);
    CHECK(report.covered_user_count == 0);
    CHECK(report.precision_at_k == 0.0);
    CHECK(report.recall_at_k == 0.0);
    CHECK(report.ndcg_at_k == 0.0);
    CHECK_FALSE(report.precision_at_k_normalized.has_value());
    CHECK_FALSE(report.recall_at_k_normalized.has_value());
    CHECK_FALSE(report.ndcg_at_k_normalized.has_value());
    CHECK(report.test_user_count == 20);
}

TEST_CASE("MostPopular covers every test user when unconsumed items exist") {
    const InteractionStore store = disjoint_store();
    const SplitResult sp = split(store, 12, 10, 7);
    const ProfileReport report = evaluate_profile(sp.train, sp.test, mp_profile());
    CHECK(report.user_coverage == 1.0);
    CHECK(report.covered_user_count == report.test_user_count);
    REQUIRE(report.precision_at_k_normalized.has_value());
    CHECK(*report.precision_at_k_normalized == report.precision_at_k);
}

TEST_CASE("normalized metrics equal plain divided by coverage, recomputed from records") {
    const InteractionStore store = connected_store();
    const SplitResult sp = split(store, 11, 10, 3);
    REQUIRE(sp.test.size() > 30);
    for (const auto& profile : {mp_profile(), full_profile(), ov_profile(20)}) {
        const ProfileReport report = evaluate_profile(sp.train, sp.test, profile);

        double sum_p = 0.0, sum_n = 0.0;
        std::size_t covered = 0;
        for (const UserRecord& r : report.records) {
            sum_p += r.precision;
            sum_n += r.ndcg;
            if (r.covered) ++covered;
        }
        const double n = static_cast<double>(report.test_user_count);
        CHECK(report.user_coverage ==
              doctest::Approx(static_cast<double>(covered) / n).epsilon(1e-15));
        CHECK(report.precision_at_k == doctest::Approx(sum_p / n).epsilon(1e-12));
        CHECK(report.ndcg_at_k == doctest::Approx(sum_n / n).epsilon(1e-12));
        if (report.user_coverage > 0.0) {
            REQUIRE(report.ndcg_at_k_normalized.has_value());
            CHECK(*report.ndcg_at_k_normalized ==
                  doctest::Approx(report.ndcg_at_k / report.user_coverage).epsilon(1e-12));
            CHECK(*report.ndcg_at_k_normalized >= report.ndcg_at_k);
        }
    }
}

TEST_CASE("precision equals recall with holdout = k = 10") {
    const InteractionStore store = connected_store();
    const SplitResult sp = split(store, 11, 10, 5);
    for (const auto& profile : {mp_profile(), full_profile(), ov_profile(40)}) {
        const ProfileReport report = evaluate_profile(sp.train, sp.test, profile);
        CHECK(std::abs(report.precision_at_k - report.recall_at_k) < 1e-12);
        for (const UserRecord& r : report.records) {
            CHECK(std::abs(r.precision - r.recall) < 1e-12);
        }
    }
}

TEST_CASE("per-user records align with direct recomputation") {
    const InteractionStore store = connected_store();
    const SplitResult sp = split(store, 11, 10, 9);
    const ProfileReport report = evaluate_profile(sp.train, sp.test, ov_profile(60));
    REQUIRE(report.records.size() == sp.test.size());

    Recommender rec(sp.train);
    auto it = sp.test.begin();
    UserId prev = 0;
    for (std::size_t i = 0; i < report.records.size(); ++i, ++it) {
        const UserRecord& r = report.records[i];
        CHECK(r.user == it->first);
        if (i > 0) CHECK(r.user > prev);
        prev = r.user;

        std::vector<ItemId> recommended;
        for (const ScoredItem& s : rec.recommend(r.user, ov_profile(60), 10)) {
            recommended.push_back(s.item);
        }
        CHECK(r.covered == !recommended.empty());
        CHECK(r.precision == precision_at(recommended, it->second, 10));
        CHECK(r.ndcg == ndcg_at(recommended, it->second, 10));
    }
}

TEST_CASE("ndcg curve has one value per cutoff and ends at ndcg_at_k") {
    const InteractionStore store = connected_store();
    const SplitResult sp = split(store, 11, 10, 4);
    const ProfileReport report = evaluate_profile(sp.train, sp.test, mp_profile());
    REQUIRE(report.ndcg_curve.size() == 10);
    CHECK(report.ndcg_curve.back() == report.ndcg_at_k);
    for (double v : report.ndcg_curve) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("latency statistics come from the same per-user samples") {
    const InteractionStore store = connected_store();
    const SplitResult sp = split(store, 11, 10, 8);
    const ProfileReport report = evaluate_profile(sp.train, sp.test, full_profile());
    double sum = 0.0;
    for (const UserRecord& r : report.records) sum += static_cast<double>(r.latency_ns) / 1e6;
    const double mean = sum / static_cast<double>(report.records.size());
    CHECK(report.latency_mean_ms == doctest::Approx(mean).epsilon(1e-12));
    double var = 0.0;
    for (const UserRecord& r : report.records) {
        const double d = static_cast<double>(r.latency_ns) / 1e6 - mean;
        var += d * d;
    }
    CHECK(report.latency_std_ms ==
          doctest::Approx(std::sqrt(var / static_cast<double>(report.records.size())))
              .epsilon(1e-12));
}

TEST_CASE("accuracy numbers are identical across parallelism levels") {
    const InteractionStore store = connected_store();
    const SplitResult sp = split(store, 11, 10, 6);
    EvaluateOptions serial;
    EvaluateOptions parallel;
    parallel.parallelism = 4;
    const ProfileReport a = evaluate_profile(sp.train, sp.test, ov_profile(40), serial);
    const ProfileReport b = evaluate_profile(sp.train, sp.test, ov_profile(40), parallel);
    CHECK(a.precision_at_k == b.precision_at_k);
    CHECK(a.recall_at_k == b.recall_at_k);
    CHECK(a.ndcg_at_k == b.ndcg_at_k);
    CHECK(a.user_coverage == b.user_coverage);
    CHECK(a.ndcg_curve == b.ndcg_curve);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].user == b.records[i].user);
        CHECK(a.records[i].precision == b.records[i].precision);
        CHECK(a.records[i].ndcg == b.records[i].ndcg);
    }
}

TEST_CASE("repeated evaluation is bitwise deterministic apart from latency") {
    const InteractionStore store = connected_store();
    const SplitResult sp = split(store, 11, 10, 10);
    const ProfileReport a = evaluate_profile(sp.train, sp.test, ov_profile(80));
    const ProfileReport b = evaluate_profile(sp.train, sp.test, ov_profile(80));
    CHECK(a.precision_at_k == b.precision_at_k);
    CHECK(a.recall_at_k == b.recall_at_k);
    CHECK(a.ndcg_at_k == b.ndcg_at_k);
    CHECK(a.user_coverage == b.user_coverage);
    CHECK(a.ndcg_curve == b.ndcg_curve);
}

TEST_CASE("empty test set produces an all-zero report") {
    const InteractionStore store = disjoint_store();
    const TestSet empty;
    const ProfileReport report = evaluate_profile(store, empty, mp_profile());
    CHECK(report.test_user_count == 0);
    CHECK(report.user_coverage == 0.0);
    CHECK(report.precision_at_k == 0.0);
    CHECK_FALSE(report.ndcg_at_k_normalized.has_value());
    CHECK(report.ndcg_curve == std::vector<double>(10, 0.0));
}

TEST_CASE("evaluate_profiles keeps the profile order") {
    const InteractionStore store = connected_store();
    const SplitResult sp = split(store, 11, 10, 2);
    const std::vector<RecommenderProfile> profiles = {mp_profile(), full_profile(),
                                                      ov_profile(20)};
    const auto reports = evaluate_profiles(sp.train, sp.test, profiles);
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].profile == "mp");
    CHECK(reports[1].profile == "cf_full");
    CHECK(reports[2].profile == "cf_ov20");
}
