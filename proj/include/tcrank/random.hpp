#pragma once

// Deterministic random helpers. The standard distributions are
// implementation-defined, so bounded integers and unit reals are derived
// here directly from the raw engine output to keep runs reproducible
// across standard libraries.

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace tcrank {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Per-stage seed keyed by a stable name, so adding a stage leaves the others untouched.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view key) noexcept {
    return splitmix64(master ^ splitmix64(fnv1a64(key)));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Uniform integer in [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

template <class T>
void shuffle(std::span<T> items, Rng& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_index(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

/// Moves a uniform random subset of size `count` to the front of `items`.
template <class T>
void partial_shuffle(std::span<T> items, std::size_t count, Rng& rng) {
    for (std::size_t i = 0; i < count && i + 1 < items.size(); ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_index(rng, items.size() - i));
        std::swap(items[i], items[j]);
    }
}

} // namespace tcrank
