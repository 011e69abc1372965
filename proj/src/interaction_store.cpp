#include "facetrec/interaction_store.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace facetrec {

void InteractionStore::add_interaction(UserId user, ItemId item, std::optional<double> weight) {
    const double w = weight.value_or(1.0);
    if (!std::isfinite(w) || w < 0.0) {
        throw std::invalid_argument("interaction weight must be finite and >= 0");
    }
    const std::uint32_t uslot = intern_user(user);
    const std::uint32_t islot = intern_item(item);

    auto& history = forward_[uslot];
    auto fit = std::lower_bound(history.begin(), history.end(), item,
                                [](const ItemEntry& e, ItemId id) { return e.item < id; });
    auto& posting = inverted_[islot];
    if (fit != history.end() && fit->item == item) {
        // Re-insertion: overwrite the weight in both views, count stays.
        fit->weight = w;
        auto uit = std::lower_bound(posting.begin(), posting.end(), user,
                                    [](const UserEntry& e, UserId id) { return e.user < id; });
        uit->weight = w;
        return;
    }
    history.insert(fit, ItemEntry{item, islot, w});
    auto uit = std::lower_bound(posting.begin(), posting.end(), user,
                                [](const UserEntry& e, UserId id) { return e.user < id; });
    posting.insert(uit, UserEntry{user, uslot, w});
    ++num_interactions_;
}

std::span<const ItemEntry> InteractionStore::items_of(UserId user) const {
    const std::uint32_t slot = user_slot(user);
    if (slot == kNoSlot) return {};
    return forward_[slot];
}

std::span<const UserEntry> InteractionStore::users_of(ItemId item) const {
    const std::uint32_t slot = item_slot(item);
    if (slot == kNoSlot) return {};
    return inverted_[slot];
}

std::shared_ptr<const InteractionStore> InteractionStore::snapshot() const {
    return std::make_shared<const InteractionStore>(*this);
}

std::uint32_t InteractionStore::user_slot(UserId user) const {
    auto it = user_slots_.find(user);
    return it == user_slots_.end() ? kNoSlot : it->second;
}

std::uint32_t InteractionStore::item_slot(ItemId item) const {
    auto it = item_slots_.find(item);
    return it == item_slots_.end() ? kNoSlot : it->second;
}

std::vector<UserId> InteractionStore::user_ids() const {
    std::vector<UserId> ids(users_);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<ItemId> InteractionStore::item_ids() const {
    std::vector<ItemId> ids(items_);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::uint32_t InteractionStore::intern_user(UserId user) {
    auto [it, inserted] = user_slots_.try_emplace(user, static_cast<std::uint32_t>(users_.size()));
    if (inserted) {
        users_.push_back(user);
        forward_.emplace_back();
    }
    return it->second;
}

std::uint32_t InteractionStore::intern_item(ItemId item) {
    auto [it, inserted] = item_slots_.try_emplace(item, static_cast<std::uint32_t>(items_.size()));
    if (inserted) {
        items_.push_back(item);
        inverted_.emplace_back();
    }
    return it->second;
}

}  // namespace facetrec
