#pragma once

#include <cstdint>
#include <random>

namespace facetrec {

// Seeded draws used by split() and the synthetic generator. The stdlib
// leaves std::uniform_int_distribution and std::sample implementation-
// defined, so reproducible outputs go through these instead.

/// Uniform integer in [0, n) by 128-bit multiply-and-shift. n must be >= 1.
inline std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(rng()) * static_cast<unsigned __int128>(n)) >> 64);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace facetrec
