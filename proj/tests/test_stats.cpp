#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "facetrec/stats.hpp"
#include "test_util.hpp"

using namespace facetrec;

namespace {

// Brute-force two-pass central moments in plain double arithmetic.
struct OracleMoments {
    double mean, std_dev, skewness, kurtosis;
};

OracleMoments oracle(const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : v) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    return {mean, std::sqrt(m2), m3 / std::pow(m2, 1.5), m4 / (m2 * m2)};
}

}  // namespace

TEST_CASE("moments rejects degenerate input") {
    CHECK_THROWS_AS(moments(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(moments(std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(moments(std::vector<double>{2.0, 2.0, 2.0}), std::invalid_argument);
}

TEST_CASE("symmetric input has zero skewness") {
    const std::vector<double> v = {1.0, 2.0, 3.0};
    const Moments m = moments(v);
    CHECK(m.mean == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(m.skewness == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("the [1,1,1,10] example") {
    const std::vector<double> v = {1.0, 1.0, 1.0, 10.0};
    const Moments m = moments(v);
    // g1 = 2/sqrt(3) ≈ 1.1547 for this three-one-outlier shape.
    CHECK(m.skewness == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-9));
    CHECK(m.mean == doctest::Approx(3.25).epsilon(1e-15));
}

TEST_CASE("population moments match the brute-force oracle") {
    std::mt19937_64 rng(2718);
    for (int round = 0; round < 1000; ++round) {
        const std::size_t n = 2 + rng() % 200;
        std::vector<double> v(n);
        bool constant = true;
        for (auto& x : v) x = static_cast<double>(rng() % 10000) / 7.0 - 300.0;
        for (std::size_t i = 1; i < n; ++i) constant = constant && v[i] == v[0];
        if (constant) v[0] += 1.0;

        const Moments got = moments(v);
        const OracleMoments want = oracle(v);
        CHECK(got.mean == doctest::Approx(want.mean).epsilon(1e-9));
        CHECK(got.std_dev == doctest::Approx(want.std_dev).epsilon(1e-9));
        CHECK(got.skewness == doctest::Approx(want.skewness).epsilon(1e-9));
        CHECK(got.kurtosis == doctest::Approx(want.kurtosis).epsilon(1e-9));
    }
}

TEST_CASE("large-sample agreement with the oracle") {
    std::mt19937_64 rng(14142);
    std::vector<double> v(1000000);
    for (auto& x : v) x = static_cast<double>(rng() % 1000000) / 1000.0;
    const Moments got = moments(v);
    const OracleMoments want = oracle(v);
    CHECK(got.mean == doctest::Approx(want.mean).epsilon(1e-9));
    CHECK(got.std_dev == doctest::Approx(want.std_dev).epsilon(1e-9));
    CHECK(got.skewness == doctest::Approx(want.skewness).epsilon(1e-6));
    CHECK(got.kurtosis == doctest::Approx(want.kurtosis).epsilon(1e-9));
}

TEST_CASE("scale and shift behavior") {
    std::mt19937_64 rng(33);
    std::vector<double> v(500);
    for (auto& x : v) x = static_cast<double>(rng() % 1000) / 9.0;
    const Moments base = moments(v);

    SUBCASE("scaling by c > 0 scales mean and std, keeps shape") {
        const double c = 3.7;
        std::vector<double> scaled = v;
        for (auto& x : scaled) x *= c;
        const Moments m = moments(scaled);
        CHECK(m.mean == doctest::Approx(base.mean * c).epsilon(1e-9));
        CHECK(m.std_dev == doctest::Approx(base.std_dev * c).epsilon(1e-9));
        CHECK(m.skewness == doctest::Approx(base.skewness).epsilon(1e-9));
        CHECK(m.kurtosis == doctest::Approx(base.kurtosis).epsilon(1e-9));
    }
    SUBCASE("shifting leaves std, skewness and kurtosis unchanged") {
        std::vector<double> shifted = v;
        for (auto& x : shifted) x += 1234.5;
        const Moments m = moments(shifted);
        CHECK(m.mean == doctest::Approx(base.mean + 1234.5).epsilon(1e-9));
        CHECK(m.std_dev == doctest::Approx(base.std_dev).epsilon(1e-9));
        CHECK(m.skewness == doctest::Approx(base.skewness).epsilon(1e-7));
        CHECK(m.kurtosis == doctest::Approx(base.kurtosis).epsilon(1e-7));
    }
}

TEST_CASE("bias-corrected variants differ in the documented direction") {
    const std::vector<double> v = {1.0, 2.0, 4.0, 8.0, 16.0};
    const Moments pop = moments(v, MomentEstimator::Population);
    const Moments bc = moments(v, MomentEstimator::BiasCorrected);
    // Bessel's correction enlarges the standard deviation.
    CHECK(bc.std_dev > pop.std_dev);
    // Adjusted Fisher-Pearson skewness scales |g1| up for small n.
    CHECK(std::abs(bc.skewness) > std::abs(pop.skewness));
    CHECK(bc.count == pop.count);
}

TEST_CASE("density is interactions over the full matrix") {
    SUBCASE("2 users x 3 items with 3 interactions") {
        InteractionStore store;
        store.add_interaction(1, 1);
        store.add_interaction(1, 2);
        store.add_interaction(2, 3);
        CHECK(density(store) == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("complete matrix has density 1") {
        InteractionStore store;
        for (UserId u = 1; u <= 3; ++u)
            for (ItemId i = 1; i <= 4; ++i) store.add_interaction(u, i);
        CHECK(density(store) == 1.0);
    }
    SUBCASE("single interaction store has density 1") {
        InteractionStore store;
        store.add_interaction(1, 1);
        CHECK(density(store) == 1.0);
    }
    SUBCASE("empty store is an error") {
        InteractionStore store;
        CHECK_THROWS_AS(density(store), std::invalid_argument);
    }
}

TEST_CASE("dataset_stats aggregates the per-user count vector") {
    SUBCASE("two-user example: sizes 1 and 3") {
        InteractionStore store;
        store.add_interaction(1, 10);
        store.add_interaction(2, 11);
        store.add_interaction(2, 12);
        store.add_interaction(2, 13);
        const DatasetStats stats = dataset_stats(store);
        CHECK(stats.user_history.mean == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(stats.user_history.std_dev == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(stats.num_users == 2);
        CHECK(stats.num_items == 4);
        CHECK(stats.num_interactions == 4);
        CHECK(stats.density == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("uniform history sizes make the moments degenerate") {
        InteractionStore store;
        for (UserId u = 1; u <= 5; ++u)
            for (ItemId i = 1; i <= 3; ++i) store.add_interaction(u, i);
        CHECK_THROWS_AS(dataset_stats(store), std::invalid_argument);
    }
    SUBCASE("heavy-tailed store is more skewed than a balanced one") {
        const InteractionStore balanced = testutil::random_store(5, 400, 100, 10);
        InteractionStore heavy = testutil::random_store(5, 400, 100, 10);
        // Give a few users enormous histories.
        for (UserId u = 0; u < 5; ++u)
            for (ItemId i = 0; i < 90; ++i)
                heavy.add_interaction(u * 3 + 1, i * 3 + 1);
        const DatasetStats hb = dataset_stats(balanced);
        const DatasetStats hh = dataset_stats(heavy);
        CHECK(hh.user_history.skewness > hb.user_history.skewness);
        CHECK(hh.user_history.kurtosis > hb.user_history.kurtosis);
    }
}
