#pragma once

#include <cstddef>
#include <cstdint>

#include "facetrec/interaction_store.hpp"

namespace facetrec {

/// Knobs for the synthetic workload generator.
///
/// Per-user history lengths follow a bounded Pareto distribution on
/// [min_interactions_per_user, max_interactions_per_user] with tail index
/// `count_shape` (larger values concentrate mass near the minimum).  Items
/// are drawn without replacement from a Zipf popularity law where the item
/// at rank r has weight (r + 1)^-popularity_exponent.  An exponent of 0
/// yields uniform popularity.
struct SyntheticSpec {
    std::size_t num_users = 1000;
    std::size_t num_items = 500;
    std::size_t min_interactions_per_user = 2;
    std::size_t max_interactions_per_user = 50;
    double count_shape = 1.2;
    double popularity_exponent = 0.9;
    std::uint64_t seed = 1;
};

/// Generates a synthetic interaction store.  The same spec always produces
/// the same store, independent of platform and standard library.
///
/// Throws std::invalid_argument when the spec is inconsistent (zero users or
/// items, min > max, max > num_items, non-positive count_shape, or negative
/// popularity_exponent).
InteractionStore generate_synthetic(const SyntheticSpec& spec);

}  // namespace facetrec
