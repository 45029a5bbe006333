#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "probelab/memory.hpp"
#include "probelab/rng.hpp"

namespace probelab {

// Dynamic forest keeping each tree's Euler tour in a balanced search tree
// (a treap ordered by tour position, with parent pointers so splits can start
// from any node). The tour holds one self arc (v,v) per vertex and a pair of
// directed arcs per tree edge.
//
// Tree nodes live in backend cells, four per node: left, right, parent, arc.
// Treap priorities are derived from the node id, and the edge->node
// dictionary plus the node allocator are untraced bookkeeping.
template <class Backend>
class EulerTourForest {
public:
    using vertex = std::uint32_t;

    EulerTourForest(Backend& mem, vertex n, std::uint64_t seed = 1)
        : mem_(&mem), n_(n), seed_(seed) {
        if (n == 0) throw std::invalid_argument("forest needs at least one vertex");
        capacity_ = 3 * static_cast<std::uint64_t>(n);
        base_ = mem.alloc(4 * capacity_);
        next_fresh_ = n + 1; // ids 1..n are the self arcs
        for (vertex v = 0; v < n; ++v)
            set_arc(v + 1, v, v);
        components_ = n;
    }

    vertex num_vertices() const { return n_; }
    std::uint64_t num_components() const { return components_; }
    std::uint64_t num_edges() const { return edge_node_.size() / 2; }

    bool has_edge(vertex u, vertex v) const {
        return edge_node_.count(arc_key(u, v)) != 0;
    }

    bool connected(vertex u, vertex v) {
        check_vertex(u);
        check_vertex(v);
        return root_of(self(u)) == root_of(self(v));
    }

    void link(vertex u, vertex v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("self loops are not supported");
        node ru = reroot(u);
        node rv = root_of(self(v));
        if (ru == rv) throw std::invalid_argument("link would close a cycle");
        rv = reroot(v);
        const node e1 = new_arc(u, v);
        const node e2 = new_arc(v, u);
        join(join(join(ru, e1), rv), e2);
        --components_;
    }

    void cut(vertex u, vertex v) {
        check_vertex(u);
        check_vertex(v);
        const auto it1 = edge_node_.find(arc_key(u, v));
        const auto it2 = edge_node_.find(arc_key(v, u));
        if (it1 == edge_node_.end() || it2 == edge_node_.end())
            throw std::invalid_argument("edge is not in the forest");
        const node e1 = it1->second;
        const node e2 = it2->second;

        auto [a, b] = split_before(e1); // b starts at e1
        node first = e1, second = e2, pre = a;
        if (root_of(e2) != b) {
            // e2 precedes e1 in the tour: reassemble and re-split there
            first = e2;
            second = e1;
            join(a, b);
            pre = split_before(first).first;
        }
        auto [mid_with_first, tail_with_second] = split_before(second);
        node inner = drop_head(mid_with_first, first);
        node tail = drop_head(tail_with_second, second);
        join(pre, tail);
        (void)inner; // the detached subtree is already a valid tour

        free_arc(e1, u, v);
        free_arc(e2, v, u);
        ++components_;
    }

    // Normalized sorted edge list; used to check state restoration exactly.
    std::vector<std::pair<vertex, vertex>> edges() const {
        std::vector<std::pair<vertex, vertex>> out;
        out.reserve(edge_node_.size() / 2);
        for (const auto& [key, id] : edge_node_) {
            const vertex u = static_cast<vertex>(key >> 32);
            const vertex v = static_cast<vertex>(key & 0xffffffffu);
            if (u < v) out.emplace_back(u, v);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    using node = std::uint32_t; // 0 is null

    enum field : unsigned { f_left = 0, f_right = 1, f_parent = 2, f_arc = 3 };

    std::uint64_t cell(node x, unsigned f) const { return base_ + (x - 1) * 4ull + f; }

    node get(node x, unsigned f) const {
        return static_cast<node>(static_cast<std::uint64_t>(mem_->read(cell(x, f))));
    }
    void set(node x, unsigned f, node y) { mem_->write(cell(x, f), y); }

    void set_arc(node x, vertex u, vertex v) {
        mem_->write(cell(x, f_arc), (static_cast<std::uint64_t>(u) << 32) | v);
    }

    std::uint64_t prio(node x) const { return mix64(seed_ ^ (0x517cc1b727220a95ULL * x)); }

    static std::uint64_t arc_key(vertex u, vertex v) {
        return (static_cast<std::uint64_t>(u) << 32) | v;
    }

    void check_vertex(vertex v) const {
        if (v >= n_) throw std::out_of_range("vertex out of range");
    }

    node self(vertex v) const { return v + 1; }

    node new_arc(vertex u, vertex v) {
        node id;
        if (!free_.empty()) {
            id = free_.back();
            free_.pop_back();
        } else {
            if (next_fresh_ > capacity_) throw std::length_error("arc pool exhausted");
            id = static_cast<node>(next_fresh_++);
        }
        set(id, f_left, 0);
        set(id, f_right, 0);
        set(id, f_parent, 0);
        set_arc(id, u, v);
        edge_node_.emplace(arc_key(u, v), id);
        return id;
    }

    void free_arc(node id, vertex u, vertex v) {
        edge_node_.erase(arc_key(u, v));
        free_.push_back(id);
    }

    node root_of(node x) {
        node p = get(x, f_parent);
        while (p != 0) {
            x = p;
            p = get(x, f_parent);
        }
        return x;
    }

    bool higher(node a, node b) const {
        const auto pa = prio(a), pb = prio(b);
        return pa != pb ? pa > pb : a > b;
    }

    node join(node a, node b) {
        if (a == 0) return b;
        if (b == 0) return a;
        if (higher(a, b)) {
            const node r = join(get(a, f_right), b);
            set(a, f_right, r);
            set(r, f_parent, a);
            return a;
        }
        const node l = join(a, get(b, f_left));
        set(b, f_left, l);
        set(l, f_parent, b);
        return b;
    }

    // Splits the tour containing x into (everything before x, x and after).
    std::pair<node, node> split_before(node x) {
        node a = get(x, f_left);
        if (a != 0) {
            set(a, f_parent, 0);
            set(x, f_left, 0);
        }
        node b = x;
        node up = get(x, f_parent);
        bool was_right = up != 0 && get(up, f_right) == x;
        set(x, f_parent, 0);
        while (up != 0) {
            const node next = get(up, f_parent);
            const bool next_right = next != 0 && get(next, f_right) == up;
            set(up, f_parent, 0);
            if (was_right) {
                set(up, f_right, 0);
                a = join(up, a);
            } else {
                set(up, f_left, 0);
                b = join(b, up);
            }
            was_right = next_right;
            up = next;
        }
        return {a, b};
    }

    // Splits into (prefix through x, everything after x).
    std::pair<node, node> split_after(node x) {
        node b = get(x, f_right);
        if (b != 0) {
            set(b, f_parent, 0);
            set(x, f_right, 0);
        }
        node a = x;
        node up = get(x, f_parent);
        bool was_right = up != 0 && get(up, f_right) == x;
        set(x, f_parent, 0);
        while (up != 0) {
            const node next = get(up, f_parent);
            const bool next_right = next != 0 && get(next, f_right) == up;
            set(up, f_parent, 0);
            if (was_right) {
                set(up, f_right, 0);
                a = join(up, a);
            } else {
                set(up, f_left, 0);
                b = join(b, up);
            }
            was_right = next_right;
            up = next;
        }
        return {a, b};
    }

    // Removes the known first element of a tour and returns the rest.
    node drop_head(node tree, node head) {
        (void)tree;
        auto [h, rest] = split_after(head);
        if (h != head || get(head, f_left) != 0 || get(head, f_right) != 0)
            throw std::logic_error("tour arc was not at the expected position");
        return rest;
    }

    // Rotates the tour of v's tree so it starts at the self arc (v,v).
    node reroot(vertex v) {
        auto [a, b] = split_before(self(v));
        return join(b, a);
    }

    Backend* mem_;
    vertex n_;
    std::uint64_t seed_;
    std::uint64_t capacity_ = 0;
    std::uint64_t base_ = 0;
    std::uint64_t next_fresh_ = 1;
    std::uint64_t components_ = 0;
    std::vector<node> free_;
    std::unordered_map<std::uint64_t, node> edge_node_;
};

} // namespace probelab
