#include "facetrec/split.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "facetrec/random_util.hpp"

namespace facetrec {

SplitResult split(const InteractionStore& store, std::size_t min_interactions,
                  std::size_t holdout, std::uint64_t seed) {
    if (holdout < 1) throw std::invalid_argument("holdout must be >= 1");
    if (min_interactions <= holdout) {
        throw std::invalid_argument(
            "min_interactions must exceed holdout, otherwise a test user would keep no "
            "training history");
    }

    SplitResult result;
    result.seed = seed;
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> picks;

    // Ascending-user iteration pins both the RNG stream and the train
    // store's slot assignment.
    for (UserId user : store.user_ids()) {
        const auto history = store.items_of(user);
        if (history.size() < min_interactions) {
            for (const ItemEntry& e : history) {
                result.train.add_interaction(user, e.item, e.weight);
            }
            continue;
        }
        // Fisher-Yates prefix of length `holdout` over the history indices.
        picks.resize(history.size());
        std::iota(picks.begin(), picks.end(), std::size_t{0});
        for (std::size_t j = 0; j < holdout; ++j) {
            const std::size_t swap_at =
                j + static_cast<std::size_t>(bounded_rand(rng, picks.size() - j));
            std::swap(picks[j], picks[swap_at]);
        }
        std::sort(picks.begin(), picks.begin() + static_cast<std::ptrdiff_t>(holdout));
        std::vector<ItemId> held;
        held.reserve(holdout);
        std::size_t next_held = 0;
        for (std::size_t i = 0; i < history.size(); ++i) {
            if (next_held < holdout && picks[next_held] == i) {
                held.push_back(history[i].item);
                ++next_held;
            } else {
                result.train.add_interaction(user, history[i].item, history[i].weight);
            }
        }
        result.test.emplace(user, std::move(held));
    }
    return result;
}

}  // namespace facetrec
