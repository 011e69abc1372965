#include "facetrec/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "facetrec/random_util.hpp"

namespace facetrec {
namespace {

void validate(const SyntheticSpec& spec) {
    if (spec.num_users == 0) throw std::invalid_argument("num_users must be positive");
    if (spec.num_items == 0) throw std::invalid_argument("num_items must be positive");
    if (spec.min_interactions_per_user < 1) {
        throw std::invalid_argument("min_interactions_per_user must be >= 1");
    }
    if (spec.min_interactions_per_user > spec.max_interactions_per_user) {
        throw std::invalid_argument(
            "min_interactions_per_user must not exceed max_interactions_per_user");
    }
    if (spec.max_interactions_per_user > spec.num_items) {
        throw std::invalid_argument(
            "max_interactions_per_user must not exceed num_items (sampling is without "
            "replacement)");
    }
    if (!(spec.count_shape > 0.0)) {
        throw std::invalid_argument("count_shape must be positive");
    }
    if (spec.popularity_exponent < 0.0) {
        throw std::invalid_argument("popularity_exponent must be non-negative");
    }
}

/// Bounded Pareto draw on [lo, hi] via inverse CDF, truncated to integers.
/// The upper bound uses hi + 1 so that hi itself keeps nonzero mass.
std::size_t draw_history_length(std::mt19937_64& rng, std::size_t lo, std::size_t hi,
                                double shape) {
    if (lo == hi) return lo;
    const double l = static_cast<double>(lo);
    const double h = static_cast<double>(hi) + 1.0;
    const double la = std::pow(l, shape);
    const double ha = std::pow(h, shape);
    const double u = uniform_unit(rng);
    const double x = std::pow(-(u * ha - u * la - ha) / (ha * la), -1.0 / shape);
    auto n = static_cast<std::size_t>(x);
    return std::clamp(n, lo, hi);
}

/// Draws `count` distinct item slots according to the cumulative Zipf
/// weights.  Rejection off the cumulative table is fast while the draw is
/// sparse relative to the catalogue; once it stops being sparse (or rejection
/// stalls on a pathologically peaked law) we fall back to an
/// Efraimidis-Spirakis weighted reservoir over all items.
class ZipfSampler {
public:
    ZipfSampler(std::size_t num_items, double exponent) : weights_(num_items), cumulative_(num_items) {
        double total = 0.0;
        for (std::size_t rank = 0; rank < num_items; ++rank) {
            weights_[rank] = std::pow(static_cast<double>(rank) + 1.0, -exponent);
            total += weights_[rank];
            cumulative_[rank] = total;
        }
    }

    void draw_distinct(std::mt19937_64& rng, std::size_t count, std::vector<std::uint32_t>& out) {
        out.clear();
        if (count > cumulative_.size() / 4) {
            draw_reservoir(rng, count, out);
            return;
        }
        drawn_.assign(cumulative_.size(), false);
        const double total = cumulative_.back();
        const std::size_t attempt_cap = 100 + 60 * count;
        std::size_t attempts = 0;
        while (out.size() < count) {
            if (++attempts > attempt_cap) {
                draw_reservoir(rng, count, out);
                return;
            }
            const double point = uniform_unit(rng) * total;
            const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), point);
            auto slot = static_cast<std::uint32_t>(it - cumulative_.begin());
            if (slot >= cumulative_.size()) slot = static_cast<std::uint32_t>(cumulative_.size() - 1);
            if (drawn_[slot]) continue;
            drawn_[slot] = true;
            out.push_back(slot);
        }
    }

private:
    void draw_reservoir(std::mt19937_64& rng, std::size_t count, std::vector<std::uint32_t>& out) {
        // Efraimidis-Spirakis: keep the `count` largest keys u^(1/w).
        out.clear();
        using Keyed = std::pair<double, std::uint32_t>;
        std::priority_queue<Keyed, std::vector<Keyed>, std::greater<>> smallest_on_top;
        for (std::size_t slot = 0; slot < weights_.size(); ++slot) {
            const double key =
                std::log(std::max(uniform_unit(rng), 1e-300)) / weights_[slot];
            if (smallest_on_top.size() < count) {
                smallest_on_top.emplace(key, static_cast<std::uint32_t>(slot));
            } else if (key > smallest_on_top.top().first) {
                smallest_on_top.pop();
                smallest_on_top.emplace(key, static_cast<std::uint32_t>(slot));
            }
        }
        while (!smallest_on_top.empty()) {
            out.push_back(smallest_on_top.top().second);
            smallest_on_top.pop();
        }
    }

    std::vector<double> weights_;
    std::vector<double> cumulative_;
    std::vector<char> drawn_;
};

}  // namespace

InteractionStore generate_synthetic(const SyntheticSpec& spec) {
    validate(spec);
    InteractionStore store;
    std::mt19937_64 rng(spec.seed);
    ZipfSampler sampler(spec.num_items, spec.popularity_exponent);
    std::vector<std::uint32_t> drawn;
    for (std::size_t u = 0; u < spec.num_users; ++u) {
        const std::size_t length = draw_history_length(
            rng, spec.min_interactions_per_user, spec.max_interactions_per_user,
            spec.count_shape);
        sampler.draw_distinct(rng, length, drawn);
        // Ascending insertion keeps add_interaction on its append-fast path.
        std::sort(drawn.begin(), drawn.end());
        for (std::uint32_t item : drawn) {
            store.add_interaction(static_cast<UserId>(u), static_cast<ItemId>(item));
        }
    }
    return store;
}

}  // namespace facetrec
