#pragma once

#include <span>

#include "facetrec/interaction_store.hpp"

namespace facetrec {

// Ranking accuracy at a cutoff. `recommended` is a ranked list (best first),
// `relevant` must be sorted ascending. All three require k >= 1; recall and
// ndcg additionally require a non-empty relevant set and throw
// std::invalid_argument otherwise.

/// |top-k ∩ relevant| / k. The denominator stays k even when fewer than k
/// items were recommended.
double precision_at(std::span<const ItemId> recommended, std::span<const ItemId> relevant,
                    std::size_t k);

/// |top-k ∩ relevant| / |relevant|.
double recall_at(std::span<const ItemId> recommended, std::span<const ItemId> relevant,
                 std::size_t k);

/// Binary-relevance nDCG: hits at 1-based position p gain 1/log2(p+1); the
/// ideal ranking places min(k, |relevant|) hits first.
double ndcg_at(std::span<const ItemId> recommended, std::span<const ItemId> relevant,
               std::size_t k);

}  // namespace facetrec
