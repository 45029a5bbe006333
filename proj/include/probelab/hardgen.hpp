#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "probelab/rng.hpp"

namespace probelab {

struct Permutation {
    std::vector<std::uint32_t> map;

    Permutation() = default;
    explicit Permutation(std::uint32_t order);
    static Permutation identity(std::uint32_t order);
    static Permutation random(std::uint32_t order, SplitMix64& rng);

    std::uint32_t order() const { return static_cast<std::uint32_t>(map.size()); }
    std::uint32_t operator()(std::uint32_t i) const { return map.at(i); }
    bool is_valid() const;

    // Apply this permutation, then `next` (wire-tracing order).
    Permutation then(const Permutation& next) const;
};

// Reverses the k-bit representation of i.
std::uint32_t bit_reverse(std::uint32_t i, unsigned k);
Permutation bitrev_perm(unsigned k);

enum class OpKind { update, sum, select, insert, erase, connected };

struct Op {
    OpKind kind = OpKind::update;
    std::uint64_t index = 0;   // update/sum position
    std::int64_t delta = 0;    // update argument
    std::int64_t sigma = 0;    // select argument
    std::int64_t expected = 0; // sum/select answer
    std::uint32_t u = 0;       // edge/query endpoints
    std::uint32_t v = 0;
    bool expected_flag = false; // connected answer
};

struct OpSequence {
    std::string family;
    std::uint64_t n = 0;    // array length or vertex count
    unsigned delta = 0;     // update width in bits (sums families)
    std::uint64_t seed = 0;
    std::uint64_t side = 0; // permutation-box instances only
    std::vector<Op> ops;
};

// n pairs of update+sum, pair i touching index pi(i) for the bit-reversal
// permutation pi; the classic fixed sequence with total time-tree
// interleaving proportional to n lg n.
OpSequence bitrev_sequence(std::uint64_t n, unsigned delta, std::uint64_t seed);

// Alternating update/sum at uniformly random indices with uniform
// delta-bit arguments.
OpSequence random_alternating(std::uint64_t m, std::uint64_t n, unsigned delta,
                              std::uint64_t seed);

// Blocks of t_q updates followed by t_u sum queries, all arguments random.
OpSequence tradeoff_blocks(std::uint64_t num_blocks, std::uint64_t t_u, std::uint64_t t_q,
                           std::uint64_t n, unsigned delta, std::uint64_t seed);

// Chain of `side` permutation boxes between side+1 columns of `side` wires;
// vertex (x, y) has id x*side + y. The graph is a disjoint union of exactly
// `side` paths at all times.
struct PermBoxInstance {
    std::uint32_t side = 0;
    std::vector<Permutation> boxes;

    static PermBoxInstance identity(std::uint32_t side);

    std::uint32_t vertex_id(std::uint32_t column, std::uint32_t wire) const {
        return column * side + wire;
    }
    std::uint32_t num_vertices() const { return (side + 1) * side; }

    // Composition of the first x boxes: where a wire entering column 0 at
    // height y sits when it reaches column x.
    Permutation compose_prefix(std::uint32_t x) const;
};

enum class PermBoxOrder { bitrev, uniform };
enum class PermBoxQueryMode { macro_verify, random_pairs };

// Connectivity workload: a setup prologue that inserts the identity boxes,
// then `blocks` rounds of one macro-update (replace a box with a fresh random
// permutation) followed by connectivity queries with known-true answers.
// macro_verify asks the whole column identity check (side queries);
// random_pairs asks queries_per_block random wire/column pairs.
// If out_states is non-null it receives the instance after each block's
// macro-update (index 0 is the state after the prologue).
OpSequence permbox_sequence(std::uint32_t side, std::uint64_t blocks,
                            std::uint64_t queries_per_block, PermBoxOrder order,
                            PermBoxQueryMode query_mode, std::uint64_t seed,
                            std::vector<PermBoxInstance>* out_states = nullptr);

void write_sequence_jsonl(std::ostream& os, const OpSequence& seq);
OpSequence read_sequence_jsonl(std::istream& is);

} // namespace probelab
