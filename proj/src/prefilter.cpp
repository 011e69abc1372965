#include "facetrec/prefilter.hpp"

#include <algorithm>
#include <stdexcept>

namespace facetrec {

std::uint32_t overlap_size(std::span<const ItemEntry> a, std::span<const ItemEntry> b) {
    std::uint32_t n = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].item < b[j].item) {
            ++i;
        } else if (b[j].item < a[i].item) {
            ++j;
        } else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

void OverlapCounter::accumulate(UserId target) {
    if (counts_.size() < store_->user_slot_count()) {
        counts_.resize(store_->user_slot_count(), 0);
    }
    const std::uint32_t tslot = store_->user_slot(target);
    if (tslot == kNoSlot) return;
    for (const ItemEntry& ie : store_->items_at(tslot)) {
        for (const UserEntry& ue : store_->users_at(ie.item_slot)) {
            if (ue.user_slot == tslot) continue;
            if (counts_[ue.user_slot]++ == 0) {
                touched_.push_back(ue.user_slot);
            }
        }
    }
}

void OverlapCounter::reset() {
    for (std::uint32_t slot : touched_) counts_[slot] = 0;
    touched_.clear();
}

CandidateSet OverlapCounter::top_n(UserId target, std::size_t n) {
    if (n < 1) throw std::invalid_argument("facet top-n requires n >= 1");
    CandidateSet result;
    result.target = target;
    accumulate(target);

    std::vector<CandidateEntry> ranked;
    ranked.reserve(touched_.size());
    for (std::uint32_t slot : touched_) {
        ranked.push_back(CandidateEntry{store_->user_at(slot), counts_[slot]});
    }
    const auto by_rank = [](const CandidateEntry& a, const CandidateEntry& b) {
        if (a.overlap != b.overlap) return a.overlap > b.overlap;
        return a.user < b.user;
    };
    if (n < ranked.size()) {
        std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(n),
                          ranked.end(), by_rank);
        ranked.resize(n);
    } else {
        std::sort(ranked.begin(), ranked.end(), by_rank);
    }
    result.entries = std::move(ranked);
    reset();
    return result;
}

std::size_t OverlapCounter::neighborhood_size(UserId target) {
    accumulate(target);
    const std::size_t n = touched_.size();
    reset();
    return n;
}

void OverlapCounter::overlapping_user_slots(UserId target, std::vector<std::uint32_t>& out) {
    accumulate(target);
    out.assign(touched_.begin(), touched_.end());
    reset();
}

CandidateSet facet_top_n(const InteractionStore& store, UserId target, std::size_t n) {
    OverlapCounter counter(store);
    return counter.top_n(target, n);
}

std::size_t neighborhood_size(const InteractionStore& store, UserId target) {
    OverlapCounter counter(store);
    return counter.neighborhood_size(target);
}

std::map<UserId, std::uint32_t> brute_force_overlap(const InteractionStore& store, UserId target) {
    std::map<UserId, std::uint32_t> out;
    const auto mine = store.items_of(target);
    if (mine.empty()) return out;
    for (UserId other : store.user_ids()) {
        if (other == target) continue;
        const std::uint32_t ov = overlap_size(mine, store.items_of(other));
        if (ov > 0) out.emplace(other, ov);
    }
    return out;
}

}  // namespace facetrec
