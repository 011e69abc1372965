#pragma once

#include <span>
#include <vector>

#include "facetrec/interaction_store.hpp"
#include "facetrec/prefilter.hpp"
#include "facetrec/profile.hpp"

namespace facetrec {

struct ScoredUser {
    UserId user;
    double score;
};

struct ScoredItem {
    ItemId item;
    double score;
};

/// Closed-form similarity from an overlap count and the two history sizes:
/// cosine_binary = ov / sqrt(|u|*|v|), jaccard = ov / |u ∪ v|, overlap_raw =
/// ov. Zero when either history is empty.
double similarity_from_overlap(std::uint32_t overlap, std::size_t size_u, std::size_t size_v,
                               SimilarityMetric metric);

/// Pairwise similarity computed by direct intersection of the two users'
/// histories. Symmetric; weights are ignored (set semantics).
double similarity(const InteractionStore& store, UserId u, UserId v, SimilarityMetric metric);

/// Turns one user's candidate neighborhood into scored item recommendations.
///
/// Neighbor selection runs one of two routes:
///  - cf_full: the classic baseline. Every user sharing an item with the
///    target is enumerated from the inverted index, then each candidate's
///    history is fetched and intersected with the target's to compute the
///    similarity, and the whole neighborhood is sorted.
///  - cf_prefiltered: the facet counter ranks users by overlap count and
///    only the top-N survive; their overlap counts double as the similarity
///    input, so no per-candidate history intersection happens.
///
/// Scoring then sums, per unseen item, the similarities of the selected
/// neighbors who consumed it; items already in the target's history are
/// never scored.
///
/// Holds per-query scratch sized to the store; use one instance per thread
/// over an immutable store snapshot. All methods are deterministic: ties
/// break by ascending identifier everywhere.
class Recommender {
public:
    explicit Recommender(const InteractionStore& store);

    /// Neighbor list sorted by similarity descending (ties: user ascending),
    /// truncated to profile.neighborhood_k when present. Requires a CF
    /// profile. Empty for a target with an empty history.
    std::vector<ScoredUser> select_neighbors(UserId target, const RecommenderProfile& profile);

    /// Sums neighbor similarities per item not consumed by the target.
    /// `neighbors` must be duplicate-free. Sorted by score descending, ties
    /// by ascending item id.
    std::vector<ScoredItem> score_items(UserId target, std::span<const ScoredUser> neighbors);

    /// Full pipeline: neighbor selection then item scoring, truncated to
    /// k_items; MostPopular profiles dispatch to most_popular(). Requires
    /// k_items >= 1.
    std::vector<ScoredItem> recommend(UserId target, const RecommenderProfile& profile,
                                      std::size_t k_items);

    /// Items ranked by distinct-user interaction count, excluding the
    /// target's own items, ties by ascending item id.
    std::vector<ScoredItem> most_popular(UserId target, std::size_t k_items);

private:
    void mark_seen(UserId target);
    void unmark_seen();

    const InteractionStore* store_;
    OverlapCounter counter_;
    std::vector<double> item_scores_;           // by item slot
    std::vector<char> item_touched_;            // by item slot
    std::vector<std::uint32_t> touched_items_;  // slots with a score this query
    std::vector<char> seen_;                    // target's items, by item slot
    std::vector<std::uint32_t> seen_slots_;
    std::vector<std::uint32_t> candidate_slots_;  // cf_full scratch
};

}  // namespace facetrec
