#pragma once

#include <cstdint>
#include <vector>

namespace probelab {

// Family of subsets of {0..u-1} such that every disjoint pair (A, B) with
// |A| <= a and |B| <= b has a member containing A and avoiding B. Built by
// random sampling (element inclusion probability a/(a+b)) and, when the pair
// space is small enough, verified by exhaustive enumeration.
struct SetSystem {
    unsigned universe_size = 0;
    unsigned a_bound = 0;
    unsigned b_bound = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> sets; // bitsets over the universe
    bool verified = false;

    std::uint64_t universe_mask() const {
        return universe_size >= 64 ? ~std::uint64_t{0}
                                   : (std::uint64_t{1} << universe_size) - 1;
    }
};

// Number of sampled sets: 1.5x the union-bound threshold
// (a+b)^(a+b+1) * ln(u) / (a^a * b^b), which makes a fresh sample verify with
// comfortable probability at desk scales.
std::uint64_t separator_system_size(unsigned a, unsigned b, unsigned u);

// One sampling attempt, not verified; substream `attempt` of the seed.
SetSystem sample_system(unsigned a, unsigned b, unsigned u, std::uint64_t seed,
                        unsigned attempt = 0);

// Retries up to 10 seed substreams until verification passes; returns an
// unverified system (flagged) when the pair space exceeds pair_cap.
SetSystem build_system(unsigned a, unsigned b, unsigned u, std::uint64_t seed,
                       std::uint64_t pair_cap = std::uint64_t{1} << 25);

// Exhaustively checks the separator property over all ordered disjoint pairs
// with |A| = a_bound and |B| = b_bound.
bool verify_system(const SetSystem& sys, std::uint64_t pair_cap = std::uint64_t{1} << 25);

// Index of the first set S with A inside S and B outside it, after padding
// both arguments with the smallest unused universe elements up to the bounds.
std::size_t find_separator(const SetSystem& sys, std::uint64_t A, std::uint64_t B);

std::uint64_t count_disjoint_pairs(unsigned a, unsigned b, unsigned u);

} // namespace probelab
