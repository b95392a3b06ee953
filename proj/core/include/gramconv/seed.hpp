#pragma once

#include <cstdint>

namespace gramconv {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Independent substream `stream` of a user seed.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix64(seed + 0x9e3779b97f4a7c15ULL * (stream + 1));
}

/// Seed for retry `attempt` (0 = first try).
constexpr std::uint64_t attempt_seed(std::uint64_t seed, unsigned attempt) noexcept {
    return attempt == 0 ? seed : mix64(seed + 0x9e3779b97f4a7c15ULL * attempt);
}

inline constexpr unsigned kMaxCollisionRetries = 3;

}  // namespace gramconv
