#pragma once

// Portable deterministic random number generation.
//
// All stochastic behaviour in the library flows through Pcg32 (PCG-XSH-RR
// 64/32, the pcg32 minimal generator) seeded either directly or through
// derive_seed, a splitmix64-based hash that turns (base seed, stream tags)
// into decorrelated child seeds. Results are identical across platforms for
// a given seed.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lingaff {

/// splitmix64 mixing step (Vigna's finalizer).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derive a child seed from a base seed and up to two stream tags.
/// derive_seed(base, a) and derive_seed(base, a, b) chain splitmix64 so that
/// distinct tag tuples give independent streams.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t h = splitmix64(base ^ splitmix64(a));
    if (b != 0) h = splitmix64(h ^ splitmix64(b));
    return h;
}

/// pcg32: 64-bit state, 32-bit output, period 2^64 per stream.
class Pcg32 {
public:
    explicit constexpr Pcg32(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(0), inc_((stream << 1u) | 1u) {
        next();
        state_ += seed;
        next();
    }

    constexpr std::uint32_t next() {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
    }

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    constexpr double next_double() {
        const std::uint64_t hi = next();
        const std::uint64_t lo = next();
        return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound), bound > 0. Rejection sampling, no modulo bias.
    constexpr std::uint32_t next_below(std::uint32_t bound) {
        const std::uint32_t threshold = (-bound) % bound;
        for (;;) {
            const std::uint32_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// True with probability p.
    constexpr bool bernoulli(double p) { return next_double() < p; }

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

/// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle(std::span<T> items, Pcg32& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = rng.next_below(static_cast<std::uint32_t>(i));
        using std::swap;
        swap(items[i - 1], items[j]);
    }
}

/// [0, n) shuffled with the given generator.
inline std::vector<int> shuffled_indices(int n, Pcg32& rng) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    shuffle(std::span<int>(idx), rng);
    return idx;
}

}  // namespace lingaff
