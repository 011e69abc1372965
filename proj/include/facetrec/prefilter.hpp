#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "facetrec/interaction_store.hpp"

namespace facetrec {

struct CandidateEntry {
    UserId user;
    std::uint32_t overlap;  // |Δ(target) ∩ Δ(user)|, always >= 1
};

/// Top-N candidate neighbors of one target user, ranked by overlap count
/// descending, ties broken by ascending user id. The target never appears.
struct CandidateSet {
    UserId target = 0;
    std::vector<CandidateEntry> entries;
};

/// Pass as `n` to rank the complete overlap neighborhood.
inline constexpr std::size_t kAllCandidates = std::numeric_limits<std::size_t>::max();

/// Size of the intersection of two histories (both ascending by item id).
std::uint32_t overlap_size(std::span<const ItemEntry> a, std::span<const ItemEntry> b);

/// Counts item overlaps between a target user and every other user by
/// walking the posting lists of the target's items — the in-process
/// equivalent of a count-faceted search over user ids filtered to the
/// target's history.
///
/// The counter owns a dense per-user-slot count array plus the list of slots
/// touched by the current query, so a query costs O(sum of posting lengths
/// over the target's items), not O(total users); the touched list resets the
/// counts afterwards. Reuse one instance per thread: instances are not
/// thread-safe, but any number of them may read the same store snapshot.
class OverlapCounter {
public:
    explicit OverlapCounter(const InteractionStore& store) : store_(&store) {}

    /// The n highest-overlap users under the (overlap desc, user asc) order;
    /// fewer when fewer users overlap, empty for an unknown target or an
    /// empty history. Requires n >= 1; pass kAllCandidates for the full
    /// ranking.
    CandidateSet top_n(UserId target, std::size_t n);

    /// Number of distinct users sharing at least one item with the target.
    std::size_t neighborhood_size(UserId target);

    /// Collects the distinct user slots sharing >= 1 item with the target,
    /// in unspecified order, without ranking them. This is the candidate
    /// enumeration step of the unfiltered CF baseline.
    void overlapping_user_slots(UserId target, std::vector<std::uint32_t>& out);

private:
    void accumulate(UserId target);
    void reset();

    const InteractionStore* store_;
    std::vector<std::uint32_t> counts_;   // by user slot
    std::vector<std::uint32_t> touched_;  // slots with a nonzero count
};

/// One-shot facet query; allocates fresh scratch. Callers issuing many
/// queries should hold an OverlapCounter instead.
CandidateSet facet_top_n(const InteractionStore& store, UserId target, std::size_t n);

std::size_t neighborhood_size(const InteractionStore& store, UserId target);

/// Oracle: exact overlap of the target with every other user, computed by
/// direct pairwise intersection of sorted histories over all users. Meant
/// for tests and verification, not the serving path.
std::map<UserId, std::uint32_t> brute_force_overlap(const InteractionStore& store, UserId target);

}  // namespace facetrec
