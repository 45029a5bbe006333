#include "probelab/separator.hpp"

#include <cmath>
#include <stdexcept>

#include "probelab/rng.hpp"
#include "probelab/words.hpp"

namespace probelab {

namespace {

double pow_u(double base, unsigned exp) {
    double r = 1.0;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Walks all k-subsets of {0..u-1} as bitmasks, in lexicographic order of the
// sorted element lists.
struct CombinationWalker {
    unsigned u, k;
    std::vector<unsigned> idx;
    bool done = false;

    CombinationWalker(unsigned u, unsigned k) : u(u), k(k), idx(k) {
        for (unsigned i = 0; i < k; ++i) idx[i] = i;
        if (k > u) done = true;
    }

    std::uint64_t mask() const {
        std::uint64_t m = 0;
        for (unsigned i : idx) m |= std::uint64_t{1} << i;
        return m;
    }

    void advance() {
        unsigned i = k;
        while (i-- > 0) {
            if (idx[i] + (k - i) < u) {
                ++idx[i];
                for (unsigned j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                return;
            }
        }
        done = true;
    }
};

bool separates(std::uint64_t s, std::uint64_t A, std::uint64_t B) {
    return (A & ~s) == 0 && (B & s) == 0;
}

bool has_separator(const SetSystem& sys, std::uint64_t A, std::uint64_t B) {
    for (std::uint64_t s : sys.sets)
        if (separates(s, A, B)) return true;
    return false;
}

} // namespace

std::uint64_t separator_system_size(unsigned a, unsigned b, unsigned u) {
    const double bound = pow_u(a + b, a + b + 1) * std::log(static_cast<double>(u)) /
                         (pow_u(a, a) * pow_u(b, b));
    const double padded = 1.5 * bound;
    return padded <= 1.0 ? 1 : static_cast<std::uint64_t>(std::ceil(padded));
}

std::uint64_t count_disjoint_pairs(unsigned a, unsigned b, unsigned u) {
    return binomial(u, a) * binomial(u - a, b);
}

SetSystem sample_system(unsigned a, unsigned b, unsigned u, std::uint64_t seed,
                        unsigned attempt) {
    if (a < 1 || b < 1) throw std::invalid_argument("bounds must be positive");
    if (a + b > u) throw std::invalid_argument("universe is smaller than a+b");
    if (u > 64) throw std::invalid_argument("universe sizes above 64 are not supported");

    const std::uint64_t size = separator_system_size(a, b, u);
    // inclusion probability a/(a+b), compared exactly against a 64-bit draw
    const std::uint64_t threshold = static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) << 64) / (a + b));

    SetSystem sys;
    sys.universe_size = u;
    sys.a_bound = a;
    sys.b_bound = b;
    sys.seed = seed;
    sys.sets.reserve(size);
    SplitMix64 rng = substream(seed, attempt);
    for (std::uint64_t i = 0; i < size; ++i) {
        std::uint64_t s = 0;
        for (unsigned x = 0; x < u; ++x)
            if (rng.next() < threshold) s |= std::uint64_t{1} << x;
        sys.sets.push_back(s);
    }
    return sys;
}

SetSystem build_system(unsigned a, unsigned b, unsigned u, std::uint64_t seed,
                       std::uint64_t pair_cap) {
    const bool feasible = count_disjoint_pairs(a, b, u) <= pair_cap;
    for (unsigned attempt = 0; attempt < 10; ++attempt) {
        SetSystem sys = sample_system(a, b, u, seed, attempt);
        if (!feasible) return sys; // flagged unverified
        if (verify_system(sys, pair_cap)) {
            sys.verified = true;
            return sys;
        }
    }
    throw std::runtime_error("no sampled system verified within 10 attempts");
}

bool verify_system(const SetSystem& sys, std::uint64_t pair_cap) {
    const unsigned u = sys.universe_size;
    const unsigned a = sys.a_bound;
    const unsigned b = sys.b_bound;
    if (count_disjoint_pairs(a, b, u) > pair_cap)
        throw std::length_error("pair enumeration exceeds the configured cap");
    if (sys.sets.empty()) return false;

    for (CombinationWalker wa(u, a); !wa.done; wa.advance()) {
        const std::uint64_t A = wa.mask();
        // enumerate B over the remaining elements
        std::vector<unsigned> rest;
        rest.reserve(u - a);
        for (unsigned x = 0; x < u; ++x)
            if (!(A >> x & 1)) rest.push_back(x);
        for (CombinationWalker wb(static_cast<unsigned>(rest.size()), b); !wb.done;
             wb.advance()) {
            std::uint64_t B = 0;
            for (unsigned i : wb.idx) B |= std::uint64_t{1} << rest[i];
            if (!has_separator(sys, A, B)) return false;
        }
    }
    return true;
}

std::size_t find_separator(const SetSystem& sys, std::uint64_t A, std::uint64_t B) {
    const std::uint64_t uni = sys.universe_mask();
    if ((A & ~uni) != 0 || (B & ~uni) != 0)
        throw std::invalid_argument("set elements outside the universe");
    if ((A & B) != 0) throw std::invalid_argument("query sets must be disjoint");
    if (static_cast<unsigned>(popcount128(A)) > sys.a_bound ||
        static_cast<unsigned>(popcount128(B)) > sys.b_bound)
        throw std::invalid_argument("query sets exceed the system bounds");

    // Undersized pairs are covered by padding them (conceptually) with the
    // smallest unused elements up to the verified sizes: a set separating the
    // padded pair separates the original, so matching against the original
    // arguments is complete and can only return an earlier index.
    for (std::size_t i = 0; i < sys.sets.size(); ++i)
        if (separates(sys.sets[i], A, B)) return i;
    throw std::runtime_error("system has no separator for this pair");
}

} // namespace probelab
