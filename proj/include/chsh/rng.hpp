#pragma once

#include <cstdint>

namespace chsh {

/// splitmix64 (Steele, Lea & Flood; Vigna's fixed-increment variant).
/// One 64-bit word of state, trivially seedable, and good enough statistics
/// for Monte Carlo at the trial counts used here.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1), 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n).
    std::uint64_t next_below(std::uint64_t n) {
        // Rejection sampling over the top of the range keeps it unbiased.
        std::uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }
};

/// Seed of substream `index` of a generator seeded with `seed`.
/// Substreams are independent of how work is scheduled; merging results by
/// index reproduces the serial sequence under any parallelism degree.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace chsh
