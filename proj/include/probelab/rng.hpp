#pragma once

#include <cstdint>

namespace probelab {

// SplitMix64 (Steele/Lea/Flood finalizer constants). This generator is part of
// the workload file format: sequences are reproducible across implementations
// that follow the same stream-splitting rule, documented in the README along
// with test vectors.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw from [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t r;
        do { r = next(); } while (r >= limit);
        return r % bound;
    }

    std::uint64_t range(std::uint64_t lo, std::uint64_t hi_inclusive) {
        return lo + below(hi_inclusive - lo + 1);
    }

    bool chance(std::uint64_t num, std::uint64_t den) {
        return below(den) < num;
    }
};

inline std::uint64_t mix64(std::uint64_t x) {
    SplitMix64 g(x);
    return g.next();
}

// Substream rule: stream i of a seeded generator starts from
// mix64(seed) + (i+1) * 0x9E3779B97F4A7C15. One substream per operation
// index keeps generated sequences stable under reordering of generation.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix64(seed) + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

} // namespace probelab
