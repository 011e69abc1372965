#include "facetrec/recommender.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace facetrec {
namespace {

const auto by_score_then_user = [](const ScoredUser& a, const ScoredUser& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.user < b.user;
};

const auto by_score_then_item = [](const ScoredItem& a, const ScoredItem& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.item < b.item;
};

}  // namespace

double similarity_from_overlap(std::uint32_t overlap, std::size_t size_u, std::size_t size_v,
                               SimilarityMetric metric) {
    if (size_u == 0 || size_v == 0) return 0.0;
    switch (metric) {
        case SimilarityMetric::CosineBinary:
            return static_cast<double>(overlap) /
                   std::sqrt(static_cast<double>(size_u) * static_cast<double>(size_v));
        case SimilarityMetric::Jaccard:
            return static_cast<double>(overlap) /
                   static_cast<double>(size_u + size_v - overlap);
        case SimilarityMetric::OverlapRaw:
            return static_cast<double>(overlap);
    }
    return 0.0;
}

double similarity(const InteractionStore& store, UserId u, UserId v, SimilarityMetric metric) {
    const auto a = store.items_of(u);
    const auto b = store.items_of(v);
    return similarity_from_overlap(overlap_size(a, b), a.size(), b.size(), metric);
}

Recommender::Recommender(const InteractionStore& store) : store_(&store), counter_(store) {}

void Recommender::mark_seen(UserId target) {
    if (seen_.size() < store_->item_slot_count()) {
        seen_.resize(store_->item_slot_count(), 0);
    }
    const std::uint32_t tslot = store_->user_slot(target);
    if (tslot == kNoSlot) return;
    for (const ItemEntry& e : store_->items_at(tslot)) {
        seen_[e.item_slot] = 1;
        seen_slots_.push_back(e.item_slot);
    }
}

void Recommender::unmark_seen() {
    for (std::uint32_t slot : seen_slots_) seen_[slot] = 0;
    seen_slots_.clear();
}

std::vector<ScoredUser> Recommender::select_neighbors(UserId target,
                                                      const RecommenderProfile& profile) {
    if (profile.algorithm == Algorithm::MostPopular) {
        throw std::invalid_argument("select_neighbors requires a CF profile");
    }
    const auto mine = store_->items_of(target);
    if (mine.empty()) return {};

    std::vector<ScoredUser> neighbors;
    if (profile.algorithm == Algorithm::CfPrefiltered) {
        if (!profile.candidate_budget_n) {
            throw ProfileError("profile '" + profile.name +
                               "': cf_prefiltered requires candidate_budget_n");
        }
        CandidateSet candidates = counter_.top_n(target, *profile.candidate_budget_n);
        neighbors.reserve(candidates.entries.size());
        for (const CandidateEntry& c : candidates.entries) {
            const double s = similarity_from_overlap(
                c.overlap, mine.size(), store_->items_of(c.user).size(), profile.similarity);
            if (s > 0.0) neighbors.push_back(ScoredUser{c.user, s});
        }
    } else {
        // Baseline: fetch every overlapping user's history and intersect it
        // with the target's, then rank the whole neighborhood.
        counter_.overlapping_user_slots(target, candidate_slots_);
        neighbors.reserve(candidate_slots_.size());
        for (std::uint32_t slot : candidate_slots_) {
            const auto theirs = store_->items_at(slot);
            const std::uint32_t ov = overlap_size(mine, theirs);
            const double s =
                similarity_from_overlap(ov, mine.size(), theirs.size(), profile.similarity);
            if (s > 0.0) neighbors.push_back(ScoredUser{store_->user_at(slot), s});
        }
    }
    std::sort(neighbors.begin(), neighbors.end(), by_score_then_user);
    if (profile.neighborhood_k && neighbors.size() > *profile.neighborhood_k) {
        neighbors.resize(*profile.neighborhood_k);
    }
    return neighbors;
}

std::vector<ScoredItem> Recommender::score_items(UserId target,
                                                 std::span<const ScoredUser> neighbors) {
    if (item_scores_.size() < store_->item_slot_count()) {
        item_scores_.resize(store_->item_slot_count(), 0.0);
        item_touched_.resize(store_->item_slot_count(), 0);
    }
    mark_seen(target);
    for (const ScoredUser& nb : neighbors) {
        const std::uint32_t slot = store_->user_slot(nb.user);
        if (slot == kNoSlot) continue;
        for (const ItemEntry& e : store_->items_at(slot)) {
            if (seen_[e.item_slot]) continue;
            if (!item_touched_[e.item_slot]) {
                item_touched_[e.item_slot] = 1;
                item_scores_[e.item_slot] = 0.0;
                touched_items_.push_back(e.item_slot);
            }
            item_scores_[e.item_slot] += nb.score;
        }
    }
    unmark_seen();

    std::vector<ScoredItem> scored;
    scored.reserve(touched_items_.size());
    for (std::uint32_t slot : touched_items_) {
        scored.push_back(ScoredItem{store_->item_at(slot), item_scores_[slot]});
        item_touched_[slot] = 0;
    }
    touched_items_.clear();
    std::sort(scored.begin(), scored.end(), by_score_then_item);
    return scored;
}

std::vector<ScoredItem> Recommender::recommend(UserId target, const RecommenderProfile& profile,
                                               std::size_t k_items) {
    if (k_items < 1) throw std::invalid_argument("k_items must be >= 1");
    if (profile.algorithm == Algorithm::MostPopular) {
        return most_popular(target, k_items);
    }
    const std::vector<ScoredUser> neighbors = select_neighbors(target, profile);
    std::vector<ScoredItem> scored = score_items(target, neighbors);
    if (scored.size() > k_items) scored.resize(k_items);
    return scored;
}

std::vector<ScoredItem> Recommender::most_popular(UserId target, std::size_t k_items) {
    if (k_items < 1) throw std::invalid_argument("k_items must be >= 1");
    mark_seen(target);
    std::vector<ScoredItem> ranked;
    ranked.reserve(store_->item_slot_count());
    for (std::uint32_t slot = 0; slot < store_->item_slot_count(); ++slot) {
        if (slot < seen_.size() && seen_[slot]) continue;
        const std::size_t raters = store_->users_at(slot).size();
        ranked.push_back(ScoredItem{store_->item_at(slot), static_cast<double>(raters)});
    }
    unmark_seen();
    const std::size_t k = std::min(k_items, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                      ranked.end(), by_score_then_item);
    ranked.resize(k);
    return ranked;
}

}  // namespace facetrec
