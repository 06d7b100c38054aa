#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace chromaclust {

// All randomness in the library flows from one user seed through named
// sub-streams so every run is reproducible: derive_seed(seed, "baseline"),
// derive_seed(seed, "peel", run, tree), ...

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream) noexcept {
    return splitmix64(seed ^ fnv1a64(stream));
}

template <class... Index>
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, Index... idx) noexcept {
    std::uint64_t h = seed ^ fnv1a64(stream);
    ((h = splitmix64(h ^ (static_cast<std::uint64_t>(idx) + 0x9e3779b97f4a7c15ULL))), ...);
    return splitmix64(h);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(splitmix64(seed)); }

}  // namespace chromaclust
