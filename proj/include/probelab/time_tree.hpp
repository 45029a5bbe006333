#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "probelab/memory.hpp"

namespace probelab {

// Balanced tree over the operation sequence. Each cross-operation read is
// charged to exactly one node: the lowest common ancestor of the leaf of the
// op that wrote the cell and the leaf of the op that read it.
struct TimeTreeNode {
    std::uint64_t lo = 0; // covered operation interval, inclusive (padded)
    std::uint64_t hi = 0;
    std::uint64_t transfer = 0;            // cross reads whose LCA is this node
    std::uint64_t left_sibling_transfer = 0;  // reads here, written under a left sibling
    std::uint64_t right_sibling_transfer = 0; // reads under a right sibling, written here
};

struct TimeTree {
    unsigned arity = 2;
    std::uint64_t num_ops = 0;
    std::uint64_t num_leaves = 0; // num_ops padded up to a power of arity
    unsigned height = 0;          // number of levels below the root
    // levels[0] is the root level, levels[height] the leaves.
    std::vector<std::vector<TimeTreeNode>> levels;

    std::uint64_t transfer_total() const {
        std::uint64_t t = 0;
        for (const auto& level : levels)
            for (const TimeTreeNode& n : level) t += n.transfer;
        return t;
    }

    std::uint64_t left_sibling_total() const {
        std::uint64_t t = 0;
        for (const auto& level : levels)
            for (const TimeTreeNode& n : level) t += n.left_sibling_transfer;
        return t;
    }

    std::uint64_t right_sibling_total() const {
        std::uint64_t t = 0;
        for (const auto& level : levels)
            for (const TimeTreeNode& n : level) t += n.right_sibling_transfer;
        return t;
    }

    std::vector<std::uint64_t> per_level_transfer() const {
        std::vector<std::uint64_t> out;
        out.reserve(levels.size());
        for (const auto& level : levels) {
            std::uint64_t t = 0;
            for (const TimeTreeNode& n : level) t += n.transfer;
            out.push_back(t);
        }
        return out;
    }
};

inline TimeTree build_time_tree(const ProbeTrace& trace, std::uint64_t num_ops,
                                unsigned arity = 2) {
    if (num_ops < 1) throw std::invalid_argument("need at least one operation");
    if (arity < 2) throw std::invalid_argument("arity must be at least 2");

    TimeTree tree;
    tree.arity = arity;
    tree.num_ops = num_ops;
    tree.num_leaves = 1;
    tree.height = 0;
    while (tree.num_leaves < num_ops) {
        tree.num_leaves *= arity;
        ++tree.height;
    }

    tree.levels.resize(tree.height + 1);
    std::uint64_t width = 1;
    std::uint64_t span = tree.num_leaves;
    for (unsigned l = 0; l <= tree.height; ++l) {
        tree.levels[l].resize(width);
        for (std::uint64_t j = 0; j < width; ++j) {
            tree.levels[l][j].lo = j * span;
            tree.levels[l][j].hi = j * span + span - 1;
        }
        width *= arity;
        span /= arity;
    }

    for (const ProbeEvent& e : trace) {
        if (e.op_index < 0 || static_cast<std::uint64_t>(e.op_index) >= num_ops)
            throw std::range_error("event operation index outside the sequence");
        if (e.is_write || e.last_write_op < 0 || e.last_write_op >= e.op_index)
            continue; // not a cross-operation read
        std::uint64_t w = static_cast<std::uint64_t>(e.last_write_op);
        std::uint64_t r = static_cast<std::uint64_t>(e.op_index);
        unsigned level = tree.height;
        std::uint64_t cw = w, cr = r;
        while (w != r) {
            cw = w; cr = r;
            w /= arity; r /= arity;
            --level;
        }
        tree.levels[level][w].transfer += 1;
        tree.levels[level + 1][cr].left_sibling_transfer += 1;
        tree.levels[level + 1][cw].right_sibling_transfer += 1;
    }
    return tree;
}

inline std::string time_tree_to_csv(const TimeTree& tree) {
    std::string out = "level,node_index,lo,hi,transfer\n";
    for (unsigned l = 0; l < tree.levels.size(); ++l) {
        for (std::uint64_t j = 0; j < tree.levels[l].size(); ++j) {
            const TimeTreeNode& n = tree.levels[l][j];
            out += std::to_string(l);
            out += ',';
            out += std::to_string(j);
            out += ',';
            out += std::to_string(n.lo);
            out += ',';
            out += std::to_string(n.hi);
            out += ',';
            out += std::to_string(n.transfer);
            out += '\n';
        }
    }
    return out;
}

// Number of transitions from runs of a's to runs of b's when merging the two
// sorted multisets: |{i : exists j with a_i < b_j <= a_{i+1}}|, where the
// sentinel a_{last+1} is +infinity.
inline std::uint64_t interleaving(std::vector<std::int64_t> a, std::vector<std::int64_t> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto it = std::upper_bound(b.begin(), b.end(), a[i]);
        if (it == b.end()) break; // no b above any later a either
        if (i + 1 == a.size() || *it <= a[i + 1]) ++count;
    }
    return count;
}

// One touched array index per operation, in operation order.
struct OpTouch {
    std::int64_t index = 0;
    bool is_update = false;
};

namespace detail {
inline std::uint64_t tree_interleaving_rec(const std::vector<OpTouch>& ops,
                                           std::uint64_t lo, std::uint64_t hi) {
    if (hi - lo < 2) return 0;
    const std::uint64_t mid = lo + (hi - lo) / 2;
    std::vector<std::int64_t> a, b;
    for (std::uint64_t t = lo; t < mid && t < ops.size(); ++t)
        if (ops[t].is_update) a.push_back(ops[t].index);
    for (std::uint64_t t = mid; t < hi && t < ops.size(); ++t)
        if (!ops[t].is_update) b.push_back(ops[t].index);
    return interleaving(std::move(a), std::move(b)) +
           tree_interleaving_rec(ops, lo, mid) +
           tree_interleaving_rec(ops, mid, hi);
}
} // namespace detail

// Sum over all binary time-tree nodes of the interleaving between update
// indices in the left child and query indices in the right child.
inline std::uint64_t total_tree_interleaving(const std::vector<OpTouch>& ops) {
    std::uint64_t leaves = 1;
    while (leaves < ops.size()) leaves *= 2;
    return detail::tree_interleaving_rec(ops, 0, leaves);
}

} // namespace probelab
