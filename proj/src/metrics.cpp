#include "facetrec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace facetrec {
namespace {

bool is_relevant(std::span<const ItemId> relevant, ItemId item) {
    return std::binary_search(relevant.begin(), relevant.end(), item);
}

std::size_t hits_in_top_k(std::span<const ItemId> recommended, std::span<const ItemId> relevant,
                          std::size_t k) {
    const std::size_t upto = std::min(k, recommended.size());
    std::size_t hits = 0;
    for (std::size_t i = 0; i < upto; ++i) {
        if (is_relevant(relevant, recommended[i])) ++hits;
    }
    return hits;
}

void check_cutoff(std::size_t k) {
    if (k < 1) throw std::invalid_argument("metric cutoff k must be >= 1");
}

}  // namespace

double precision_at(std::span<const ItemId> recommended, std::span<const ItemId> relevant,
                    std::size_t k) {
    check_cutoff(k);
    return static_cast<double>(hits_in_top_k(recommended, relevant, k)) / static_cast<double>(k);
}

double recall_at(std::span<const ItemId> recommended, std::span<const ItemId> relevant,
                 std::size_t k) {
    check_cutoff(k);
    if (relevant.empty()) throw std::invalid_argument("recall is undefined for an empty relevant set");
    return static_cast<double>(hits_in_top_k(recommended, relevant, k)) /
           static_cast<double>(relevant.size());
}

double ndcg_at(std::span<const ItemId> recommended, std::span<const ItemId> relevant,
               std::size_t k) {
    check_cutoff(k);
    if (relevant.empty()) throw std::invalid_argument("ndcg is undefined for an empty relevant set");
    const std::size_t upto = std::min(k, recommended.size());
    double dcg = 0.0;
    for (std::size_t i = 0; i < upto; ++i) {
        if (is_relevant(relevant, recommended[i])) {
            dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
        }
    }
    double idcg = 0.0;
    const std::size_t ideal = std::min(k, relevant.size());
    for (std::size_t i = 0; i < ideal; ++i) {
        idcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
    }
    return dcg / idcg;
}

}  // namespace facetrec
