#pragma once

#include <cstddef>
#include <span>

#include "facetrec/interaction_store.hpp"

namespace facetrec {

/// Central-moment summary of a sample.
struct Moments {
    std::size_t count = 0;
    double mean = 0.0;
    double std_dev = 0.0;
    double skewness = 0.0;
    /// Non-excess kurtosis: 3.0 for a normal distribution.
    double kurtosis = 0.0;
};

enum class MomentEstimator {
    /// Population moments: std = sqrt(m2), g1 = m3 / m2^1.5, g2 = m4 / m2^2.
    Population,
    /// Bias-corrected sample estimators (Bessel std, adjusted Fisher-Pearson
    /// skewness, the usual n-dependent kurtosis correction re-centred to
    /// non-excess form).
    BiasCorrected,
};

/// Two-pass central moments over `values`.
///
/// Throws std::invalid_argument when fewer than two values are given or when
/// the sample variance is zero (skewness and kurtosis are undefined there).
Moments moments(std::span<const double> values,
                MomentEstimator estimator = MomentEstimator::Population);

/// Interaction-matrix density: interactions / (users * items).
/// Throws std::invalid_argument on an empty store.
double density(const InteractionStore& store);

/// Shape summary of a store, as printed by the stats command.  The moment
/// descriptors are taken over per-user history sizes (one value per user).
struct DatasetStats {
    std::size_t num_users = 0;
    std::size_t num_items = 0;
    std::size_t num_interactions = 0;
    double density = 0.0;
    Moments user_history;  ///< moments of per-user history sizes
};

/// Computes DatasetStats with the given estimator.  Throws on stores whose
/// per-user history-size distribution has fewer than two points or zero
/// variance.
DatasetStats dataset_stats(const InteractionStore& store,
                           MomentEstimator estimator = MomentEstimator::Population);

}  // namespace facetrec
