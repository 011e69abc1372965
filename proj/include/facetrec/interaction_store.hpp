#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace facetrec {

using UserId = std::uint32_t;
using ItemId = std::uint32_t;

inline constexpr std::uint32_t kNoSlot = std::numeric_limits<std::uint32_t>::max();

// One item of a user's history (forward view).
struct ItemEntry {
    ItemId item;
    std::uint32_t item_slot;  // dense index of `item` inside the store
    double weight;
};

// One user of an item's posting list (inverted view).
struct UserEntry {
    UserId user;
    std::uint32_t user_slot;  // dense index of `user` inside the store
    double weight;
};

/// Dual-indexed user-item interaction data. The forward view maps each user
/// to the items they interacted with, the inverted view maps each item to the
/// posting list of users who interacted with it. Both views always hold
/// exactly the same (user, item, weight) triples.
///
/// Identifiers are opaque integers. Internally every distinct user and item
/// also gets a dense slot (assigned in first-seen order, never reused) so
/// per-query accumulators can be flat arrays; entries carry both the public
/// identifier and the slot. Lists are kept in ascending identifier order.
///
/// Thread contract: any number of concurrent readers OR one exclusive writer.
/// Long-running reads (evaluation, serving) should work on a snapshot().
class InteractionStore {
public:
    /// Inserts or updates one interaction. An absent weight marks an implicit
    /// event and is stored as 1.0. Re-inserting an existing (user, item) pair
    /// only overwrites the weight. Throws std::invalid_argument on a negative
    /// or non-finite weight.
    void add_interaction(UserId user, ItemId item, std::optional<double> weight = std::nullopt);

    /// The target user's history Δ(user) with weights, ascending item id.
    /// Empty for unknown users. The span is invalidated by writes.
    std::span<const ItemEntry> items_of(UserId user) const;

    /// Posting list of an item, ascending user id. Empty for unknown items.
    std::span<const UserEntry> users_of(ItemId item) const;

    std::size_t num_users() const { return users_.size(); }
    std::size_t num_items() const { return items_.size(); }
    std::size_t num_interactions() const { return num_interactions_; }

    /// Immutable copy of the current state; later writes to this store do not
    /// affect it.
    std::shared_ptr<const InteractionStore> snapshot() const;

    // Dense-slot access. Slot ranges are [0, *_slot_count()); slots index the
    // scratch arrays of the facet counter and item scorer.
    std::size_t user_slot_count() const { return users_.size(); }
    std::size_t item_slot_count() const { return items_.size(); }
    std::uint32_t user_slot(UserId user) const;  // kNoSlot when unknown
    std::uint32_t item_slot(ItemId item) const;
    UserId user_at(std::uint32_t slot) const { return users_[slot]; }
    ItemId item_at(std::uint32_t slot) const { return items_[slot]; }
    std::span<const ItemEntry> items_at(std::uint32_t user_slot) const { return forward_[user_slot]; }
    std::span<const UserEntry> users_at(std::uint32_t item_slot) const { return inverted_[item_slot]; }

    /// All known user / item identifiers in ascending order (copies).
    std::vector<UserId> user_ids() const;
    std::vector<ItemId> item_ids() const;

private:
    std::uint32_t intern_user(UserId user);
    std::uint32_t intern_item(ItemId item);

    std::vector<UserId> users_;  // slot -> id
    std::vector<ItemId> items_;
    std::unordered_map<UserId, std::uint32_t> user_slots_;  // id -> slot
    std::unordered_map<ItemId, std::uint32_t> item_slots_;
    std::vector<std::vector<ItemEntry>> forward_;   // by user slot
    std::vector<std::vector<UserEntry>> inverted_;  // by item slot
    std::size_t num_interactions_ = 0;
};

}  // namespace facetrec
