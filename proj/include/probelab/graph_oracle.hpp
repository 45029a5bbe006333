#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace probelab {

// BFS-based ground truth for dynamic connectivity. Not restricted to forests.
class GraphOracle {
public:
    using vertex = std::uint32_t;

    explicit GraphOracle(vertex n) : adj_(n) {}

    vertex num_vertices() const { return static_cast<vertex>(adj_.size()); }

    bool has_edge(vertex u, vertex v) const {
        check(u); check(v);
        return adj_[u].count(v) != 0;
    }

    void insert(vertex u, vertex v) {
        check(u); check(v);
        adj_[u].insert(v);
        adj_[v].insert(u);
    }

    void erase(vertex u, vertex v) {
        check(u); check(v);
        adj_[u].erase(v);
        adj_[v].erase(u);
    }

    bool connected(vertex u, vertex v) const {
        check(u); check(v);
        if (u == v) return true;
        std::vector<bool> seen(adj_.size(), false);
        std::vector<vertex> queue{u};
        seen[u] = true;
        while (!queue.empty()) {
            const vertex x = queue.back();
            queue.pop_back();
            for (vertex y : adj_[x]) {
                if (y == v) return true;
                if (!seen[y]) {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        return false;
    }

    std::uint64_t num_components() const {
        std::vector<bool> seen(adj_.size(), false);
        std::uint64_t comps = 0;
        std::vector<vertex> queue;
        for (vertex s = 0; s < adj_.size(); ++s) {
            if (seen[s]) continue;
            ++comps;
            seen[s] = true;
            queue.assign(1, s);
            while (!queue.empty()) {
                const vertex x = queue.back();
                queue.pop_back();
                for (vertex y : adj_[x])
                    if (!seen[y]) {
                        seen[y] = true;
                        queue.push_back(y);
                    }
            }
        }
        return comps;
    }

private:
    void check(vertex v) const {
        if (v >= adj_.size()) throw std::out_of_range("vertex out of range");
    }

    std::vector<std::unordered_set<vertex>> adj_;
};

} // namespace probelab
