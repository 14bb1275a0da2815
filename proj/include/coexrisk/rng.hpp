#pragma once

#include <cstdint>
#include <random>

namespace coexrisk {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent seeds from a counter.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed of realization `index` under `master`. Depends only on the pair, so
/// realizations can be evaluated in any order.
constexpr std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

/// Named random streams inside one realization.
enum class Stream : std::uint64_t {
    deployment = 1,
    shadowing = 2,
    channels_a = 3,
    channels_b = 4,
};

constexpr std::uint64_t stream_seed(std::uint64_t seed, Stream s) {
    return splitmix64(seed ^ (static_cast<std::uint64_t>(s) * 0xD1B54A32D192ED03ull));
}

}  // namespace coexrisk
