// SPDX-License-Identifier: Apache-2.0
#pragma once

/**
 * @file rng.hpp
 * @brief Counter-based random draws: the value for sample i is a pure
 *        function of (seed, i), so any partition of the index range across
 *        workers reproduces the same stream.
 *
 * Uses the splitmix64 generator evaluated at an arbitrary counter position
 * (its state advances by a fixed odd constant, so random access is just
 * seed + (counter+1) * gamma pushed through the output mix).
 */

#include <cstdint>

namespace reflectprob::montecarlo {

namespace detail {

inline constexpr std::uint64_t kSplitmixGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace detail

/// The `counter`-th 64-bit word of the stream identified by `seed`.
inline std::uint64_t counter_word(std::uint64_t seed, std::uint64_t counter) {
    return detail::mix64(seed + (counter + 1) * detail::kSplitmixGamma);
}

/// Map a 64-bit word to a double in [0, 1) with 53-bit resolution.
inline double to_unit_interval(std::uint64_t word) {
    return static_cast<double>(word >> 11) * 0x1.0p-53;
}

/// Per-sample uniforms for the object draw.
struct UnitDraw {
    double u;     ///< uniform in [0, 1): radial parameter
    double alpha; ///< uniform in [0, 2*pi): normal angle
};

/// Uniform (u, alpha) pair for sample `index` of stream `seed`.
inline UnitDraw draw_for(std::uint64_t seed, std::uint64_t index) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    return UnitDraw{to_unit_interval(counter_word(seed, 2 * index)),
                    two_pi * to_unit_interval(counter_word(seed, 2 * index + 1))};
}

} // namespace reflectprob::montecarlo
