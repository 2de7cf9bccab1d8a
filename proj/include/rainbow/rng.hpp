#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rainbow {

// Generator version tag. Bump it whenever the derivation below changes so that
// stored CSV goldens can be invalidated explicitly.
inline constexpr std::string_view rng_version = "rainbow-rng-v1";

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

using Engine = std::mt19937_64;

/// Master seed plus named substreams ("geometry", "costs", "colors",
/// "tiebreak", ...). Each substream is an independent mt19937_64 whose seed is
/// a hash of the master seed and the label, so changing one stream never moves
/// another.
struct SeedSpec {
    std::uint64_t master = 0;

    Engine stream(std::string_view label) const;
    std::uint64_t stream_seed(std::string_view label) const;
    SeedSpec child(std::uint64_t index) const { return SeedSpec{mix_seed(master, index)}; }
};

/// Uniform double in [0,1) from the top 53 bits.
inline double uniform01(Engine& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

/// Uniform double in the open interval (0,1).
inline double uniform_open01(Engine& g) { return (static_cast<double>(g() >> 11) + 0.5) * 0x1.0p-53; }

/// Uniform integer in [0, bound) by Lemire's multiply-shift with rejection.
/// Portable, unlike std::uniform_int_distribution.
std::uint64_t uniform_below(Engine& g, std::uint64_t bound);

}  // namespace rainbow
