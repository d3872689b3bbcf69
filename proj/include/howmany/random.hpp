#pragma once

#include <cstdint>
#include <random>

namespace howmany {

using RandomStream = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 42;

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Independent stream number `index` under `seed`:
///   mt19937_64(splitmix64(splitmix64(seed) ^ (index * 0x9E3779B97F4A7C15 + 1)))
/// Replications use their rep index, so results do not depend on which
/// thread ran them or in what order.
RandomStream make_stream(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace howmany
