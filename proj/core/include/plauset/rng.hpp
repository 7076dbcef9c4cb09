#pragma once

#include <cstdint>
#include <random>

namespace plauset {

using Rng = std::mt19937_64;

/// What a random stream is used for; part of the substream key.
enum class StreamPurpose : std::uint64_t {
    planning = 1,
    simulation = 2,
    verification = 3,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent deterministic stream for a (seed, run, episode, purpose) tuple.
inline Rng substream(std::uint64_t seed, std::uint64_t run, std::uint64_t episode, StreamPurpose purpose) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ run);
    h = splitmix64(h ^ episode);
    h = splitmix64(h ^ static_cast<std::uint64_t>(purpose));
    std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    return Rng(seq);
}

}  // namespace plauset
