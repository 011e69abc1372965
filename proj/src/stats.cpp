#include "facetrec/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace facetrec {

Moments moments(std::span<const double> values, MomentEstimator estimator) {
    const std::size_t n = values.size();
    if (n < 2) {
        throw std::invalid_argument("moments require at least two values");
    }
    // Two passes in extended precision: mean first, then central sums.
    long double sum = 0.0L;
    for (double v : values) sum += static_cast<long double>(v);
    const long double mean = sum / static_cast<long double>(n);

    long double s2 = 0.0L, s3 = 0.0L, s4 = 0.0L;
    for (double v : values) {
        const long double d = static_cast<long double>(v) - mean;
        const long double d2 = d * d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
    }
    const auto nn = static_cast<long double>(n);
    const long double m2 = s2 / nn;
    if (m2 <= 0.0L) {
        throw std::invalid_argument(
            "moments are undefined for a zero-variance sample");
    }
    const long double m3 = s3 / nn;
    const long double m4 = s4 / nn;

    Moments out;
    out.count = n;
    out.mean = static_cast<double>(mean);
    switch (estimator) {
        case MomentEstimator::Population: {
            out.std_dev = static_cast<double>(std::sqrt(m2));
            out.skewness = static_cast<double>(m3 / std::pow(m2, 1.5L));
            out.kurtosis = static_cast<double>(m4 / (m2 * m2));
            break;
        }
        case MomentEstimator::BiasCorrected: {
            const long double var = s2 / (nn - 1.0L);
            out.std_dev = static_cast<double>(std::sqrt(var));
            const long double g1 = m3 / std::pow(m2, 1.5L);
            if (n < 3) {
                throw std::invalid_argument(
                    "bias-corrected skewness requires at least three values");
            }
            out.skewness = static_cast<double>(
                std::sqrt(nn * (nn - 1.0L)) / (nn - 2.0L) * g1);
            if (n < 4) {
                throw std::invalid_argument(
                    "bias-corrected kurtosis requires at least four values");
            }
            const long double g2 = m4 / (m2 * m2) - 3.0L;
            const long double excess =
                (nn - 1.0L) / ((nn - 2.0L) * (nn - 3.0L)) *
                ((nn + 1.0L) * g2 + 6.0L);
            out.kurtosis = static_cast<double>(excess + 3.0L);
            break;
        }
    }
    return out;
}

double density(const InteractionStore& store) {
    if (store.num_users() == 0 || store.num_items() == 0) {
        throw std::invalid_argument("density is undefined for an empty store");
    }
    return static_cast<double>(store.num_interactions()) /
           (static_cast<double>(store.num_users()) *
            static_cast<double>(store.num_items()));
}

DatasetStats dataset_stats(const InteractionStore& store, MomentEstimator estimator) {
    DatasetStats stats;
    stats.num_users = store.num_users();
    stats.num_items = store.num_items();
    stats.num_interactions = store.num_interactions();
    stats.density = density(store);

    std::vector<double> sizes;
    sizes.reserve(store.user_slot_count());
    for (std::size_t slot = 0; slot < store.user_slot_count(); ++slot) {
        sizes.push_back(static_cast<double>(store.items_at(slot).size()));
    }
    stats.user_history = moments(sizes, estimator);
    return stats;
}

}  // namespace facetrec
