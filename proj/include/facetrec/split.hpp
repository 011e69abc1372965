#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "facetrec/interaction_store.hpp"

namespace facetrec {

/// Held-out items per test user, ascending within each user.
using TestSet = std::map<UserId, std::vector<ItemId>>;

struct SplitResult {
    InteractionStore train;
    TestSet test;
    std::uint64_t seed = 0;
};

/// Leave-`holdout`-out split: every user with at least `min_interactions`
/// items has `holdout` of them, chosen uniformly at random (seeded), moved
/// to the test set; the rest of their history and every interaction of
/// non-qualifying users goes to train. Deterministic for a fixed seed.
/// Requires min_interactions > holdout >= 1 so each test user keeps at
/// least one training item; throws std::invalid_argument otherwise.
SplitResult split(const InteractionStore& store, std::size_t min_interactions,
                  std::size_t holdout, std::uint64_t seed);

}  // namespace facetrec
