#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "probelab/euler_tour_forest.hpp"

namespace probelab {

// Forest plus the machinery that rephrases connectivity questions as
// whole-graph questions: an auxiliary hub vertex tied to a set of anchor
// vertices (one per path in the hard instances), single-query simulation via
// detach/attach/ask/undo, and the unit-weight spanning-forest cost.
template <class Backend>
class ConnectivityWorld {
public:
    using vertex = std::uint32_t;

    ConnectivityWorld(Backend& mem, vertex n, std::uint64_t seed = 1)
        : forest_(mem, n + 1, seed), n_(n) {}

    EulerTourForest<Backend>& forest() { return forest_; }
    vertex num_vertices() const { return n_; }
    vertex hub() const { return n_; }
    bool gadget_installed() const { return gadget_installed_; }

    void insert(vertex u, vertex v) { check_base(u); check_base(v); forest_.link(u, v); }
    void erase(vertex u, vertex v) { check_base(u); check_base(v); forest_.cut(u, v); }
    bool connected(vertex u, vertex v) { check_base(u); check_base(v); return forest_.connected(u, v); }

    // Attach the hub to one anchor per path.
    void install_gadget(std::vector<vertex> anchors) {
        if (gadget_installed_) throw std::logic_error("gadget already installed");
        for (vertex a : anchors) {
            check_base(a);
            forest_.link(hub(), a);
        }
        anchors_ = std::move(anchors);
        gadget_installed_ = true;
    }

    void remove_gadget() {
        if (!gadget_installed_) throw std::logic_error("gadget is not installed");
        for (vertex a : anchors_) forest_.cut(hub(), a);
        anchors_.clear();
        gadget_installed_ = false;
    }

    const std::vector<vertex>& anchors() const { return anchors_; }

    // True iff all live vertices form one component. The hub only counts
    // while the gadget is installed; otherwise it sits isolated.
    bool whole_graph_connected() {
        return live_components() == 1;
    }

    // Unit-weight minimum spanning forest cost: vertices minus components.
    std::int64_t msf_cost_unit() {
        const std::int64_t live = gadget_installed_ ? n_ + 1 : n_;
        return live - static_cast<std::int64_t>(live_components());
    }

    // Answers connected(u, v) using only whole-graph connectivity: detach u
    // from the hub, attach v, ask, then undo both changes. u must be an
    // anchor. Attaching v when it already reaches the hub would close a
    // cycle; such an edge is redundant for connectivity, so the question is
    // asked without materializing it.
    bool reduce_connectivity_query_via_whole(vertex u, vertex v) {
        if (!gadget_installed_) throw std::logic_error("gadget is not installed");
        check_base(u);
        check_base(v);
        if (std::find(anchors_.begin(), anchors_.end(), u) == anchors_.end())
            throw std::invalid_argument("query vertex is not an anchor of the gadget");

        forest_.cut(hub(), u);
        bool answer;
        if (forest_.connected(v, hub())) {
            answer = whole_graph_connected();
        } else {
            forest_.link(v, hub());
            answer = whole_graph_connected();
            forest_.cut(v, hub());
        }
        forest_.link(hub(), u);
        return answer;
    }

private:
    void check_base(vertex v) const {
        if (v >= n_) throw std::out_of_range("vertex out of range");
    }

    std::uint64_t live_components() {
        // the forest always contains the hub vertex; discount it when idle
        const std::uint64_t all = forest_.num_components();
        return gadget_installed_ ? all : all - 1;
    }

    EulerTourForest<Backend> forest_;
    vertex n_;
    bool gadget_installed_ = false;
    std::vector<vertex> anchors_;
};

} // namespace probelab
