#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "probelab/memory.hpp"
#include "probelab/packed_smallarray.hpp"

namespace probelab {

inline void check_delta(std::int64_t delta, unsigned delta_bits) {
    if (delta >= (std::int64_t{1} << delta_bits) || delta <= -(std::int64_t{1} << delta_bits))
        throw std::range_error("delta does not fit in delta bits");
}

// Ground truth: one cell per element, sums by definitional scan.
template <class Backend>
class NaivePrefixOracle {
public:
    NaivePrefixOracle(Backend& mem, std::uint64_t n, unsigned delta_bits)
        : mem_(&mem), n_(n), delta_bits_(delta_bits) {
        if (n_ == 0) throw std::invalid_argument("empty array");
        base_ = mem.alloc(n_);
    }

    std::uint64_t size() const { return n_; }

    void update(std::uint64_t k, std::int64_t delta) {
        if (k >= n_) throw std::out_of_range("index out of range");
        check_delta(delta, delta_bits_);
        const auto old = decode_signed(mem_->read(base_ + k), mem_->cell_bits());
        mem_->write(base_ + k, encode_signed(old + delta, mem_->cell_bits()));
    }

    std::int64_t sum(std::uint64_t k) const {
        if (k >= n_) throw std::out_of_range("index out of range");
        int128 acc = 0;
        for (std::uint64_t i = 0; i <= k; ++i)
            acc += decode_signed(mem_->read(base_ + i), mem_->cell_bits());
        return static_cast<std::int64_t>(acc);
    }

    std::uint64_t select(std::int64_t sigma) const {
        if (sigma < 1) throw std::domain_error("sigma must be positive");
        int128 acc = 0;
        for (std::uint64_t i = 0; i < n_; ++i) {
            acc += decode_signed(mem_->read(base_ + i), mem_->cell_bits());
            if (acc >= sigma) return i;
        }
        throw std::domain_error("sigma exceeds the total sum");
    }

private:
    Backend* mem_;
    std::uint64_t n_;
    unsigned delta_bits_;
    std::uint64_t base_ = 0;
};

// Augmented B-ary tree, one aggregate per cell. fast_query keeps per-node
// prefixes over the children (reads ~log_B n per query, writes ~B log_B n per
// update); fast_update keeps plain child totals (the mirror trade-off).
enum class ClassicTreeMode { fast_query, fast_update };

template <class Backend>
class ClassicTree {
public:
    ClassicTree(Backend& mem, std::uint64_t n, unsigned branching, ClassicTreeMode mode,
                unsigned delta_bits)
        : mem_(&mem), n_(n), B_(branching), mode_(mode), delta_bits_(delta_bits) {
        if (n_ == 0) throw std::invalid_argument("empty array");
        if (B_ < 2) throw std::invalid_argument("branching factor must be at least 2");
        depth_ = 1;
        std::uint64_t span = B_;
        while (span < n_) { span *= B_; ++depth_; }
        padded_ = span;
        level_offset_.resize(depth_);
        std::uint64_t nodes = 1, total = 0;
        for (unsigned l = 0; l < depth_; ++l) {
            level_offset_[l] = total;
            total += nodes * B_;
            nodes *= B_;
        }
        base_ = mem.alloc(total);
    }

    std::uint64_t size() const { return n_; }
    unsigned depth() const { return depth_; }

    void update(std::uint64_t k, std::int64_t delta) {
        if (k >= n_) throw std::out_of_range("index out of range");
        check_delta(delta, delta_bits_);
        std::uint64_t span = padded_;
        for (unsigned l = 0; l < depth_; ++l) {
            span /= B_;
            const std::uint64_t j = k / (span * B_);
            const unsigned c = static_cast<unsigned>((k / span) % B_);
            if (mode_ == ClassicTreeMode::fast_update) {
                add_to_cell(cell(l, j, c), delta);
            } else {
                for (unsigned cc = c; cc < B_; ++cc) add_to_cell(cell(l, j, cc), delta);
            }
        }
    }

    std::int64_t sum(std::uint64_t k) const {
        if (k >= n_) throw std::out_of_range("index out of range");
        int128 acc = 0;
        std::uint64_t span = padded_;
        for (unsigned l = 0; l < depth_; ++l) {
            span /= B_;
            const std::uint64_t j = k / (span * B_);
            const unsigned c = static_cast<unsigned>((k / span) % B_);
            const bool at_parent = (l + 1 == depth_);
            if (mode_ == ClassicTreeMode::fast_update) {
                const unsigned hi = at_parent ? c + 1 : c;
                for (unsigned cc = 0; cc < hi; ++cc) acc += read_cell(cell(l, j, cc));
            } else {
                if (at_parent) acc += read_cell(cell(l, j, c));
                else if (c > 0) acc += read_cell(cell(l, j, c - 1));
            }
        }
        return static_cast<std::int64_t>(acc);
    }

    std::uint64_t select(std::int64_t sigma) const {
        if (sigma < 1) throw std::domain_error("sigma must be positive");
        std::uint64_t j = 0;
        std::int64_t local = sigma;
        for (unsigned l = 0; l < depth_; ++l) {
            std::int64_t before = 0; // sum over children left of the pick
            unsigned c = 0;
            bool found = false;
            for (; c < B_; ++c) {
                if (mode_ == ClassicTreeMode::fast_update) {
                    const std::int64_t child = read_cell(cell(l, j, c));
                    if (before + child >= local) { found = true; break; }
                    before += child;
                } else {
                    const std::int64_t pref = read_cell(cell(l, j, c));
                    if (pref >= local) { found = true; break; }
                    before = pref;
                }
            }
            if (!found) throw std::domain_error("sigma exceeds the total sum");
            local -= before;
            j = j * B_ + c;
        }
        return j;
    }

private:
    std::uint64_t cell(unsigned level, std::uint64_t node, unsigned child) const {
        return base_ + level_offset_[level] + node * B_ + child;
    }

    std::int64_t read_cell(std::uint64_t addr) const {
        return static_cast<std::int64_t>(decode_signed(mem_->read(addr), mem_->cell_bits()));
    }

    void add_to_cell(std::uint64_t addr, std::int64_t delta) {
        const auto old = decode_signed(mem_->read(addr), mem_->cell_bits());
        mem_->write(addr, encode_signed(old + delta, mem_->cell_bits()));
    }

    Backend* mem_;
    std::uint64_t n_;
    unsigned B_;
    ClassicTreeMode mode_;
    unsigned delta_bits_;
    unsigned depth_ = 0;
    std::uint64_t padded_ = 0;
    std::uint64_t base_ = 0;
    std::vector<std::uint64_t> level_offset_;
};

// Balanced tree whose branching factor comes from the packed layout: each
// node keeps the partial sums of its B child subtrees in one PackedSmallArray,
// so a whole-path operation costs a constant number of probes per level.
template <class Backend>
class PackedTree {
public:
    PackedTree(Backend& mem, std::uint64_t n, unsigned delta_bits, bool select_enabled,
               SuccessorStrategy strategy = SuccessorStrategy::broadcast_compare)
        : mem_(&mem), n_(n), delta_bits_(delta_bits), select_enabled_(select_enabled) {
        if (n_ == 0) throw std::invalid_argument("empty array");
        const unsigned B = max_packed_elements(delta_bits, mem.cell_bits(), 2);
        if (B < 2)
            throw std::invalid_argument("no packed layout with at least two fields fits this cell width");
        lay_ = make_packed_layout(B, delta_bits, mem.cell_bits());
        depth_ = 1;
        std::uint64_t span = B;
        while (span < n_) { span *= B; ++depth_; }
        padded_ = span;
        const SmallArrayMode mode =
            select_enabled_ ? SmallArrayMode::with_select : SmallArrayMode::sum_only;
        std::uint64_t nodes = 1;
        for (unsigned l = 0; l < depth_; ++l) {
            level_first_.push_back(smalls_.size());
            for (std::uint64_t j = 0; j < nodes; ++j)
                smalls_.emplace_back(mem, lay_, mode, strategy);
            nodes *= B;
        }
    }

    std::uint64_t size() const { return n_; }
    unsigned branching() const { return lay_.B; }
    unsigned depth() const { return depth_; }
    const PackedLayout& layout() const { return lay_; }
    bool select_enabled() const { return select_enabled_; }

    void update(std::uint64_t k, std::int64_t delta) {
        if (k >= n_) throw std::out_of_range("index out of range");
        check_delta(delta, delta_bits_);
        std::uint64_t span = padded_;
        for (unsigned l = 0; l < depth_; ++l) {
            span /= lay_.B;
            const std::uint64_t j = k / (span * lay_.B);
            const unsigned c = static_cast<unsigned>((k / span) % lay_.B);
            small(l, j).update(c, delta);
        }
    }

    std::int64_t sum(std::uint64_t k) const {
        if (k >= n_) throw std::out_of_range("index out of range");
        int128 acc = 0;
        std::uint64_t span = padded_;
        for (unsigned l = 0; l < depth_; ++l) {
            span /= lay_.B;
            const std::uint64_t j = k / (span * lay_.B);
            const unsigned c = static_cast<unsigned>((k / span) % lay_.B);
            if (l + 1 == depth_) acc += small(l, j).sum(c);
            else if (c > 0) acc += small(l, j).sum(c - 1);
        }
        return static_cast<std::int64_t>(acc);
    }

    std::uint64_t select(std::int64_t sigma) {
        if (!select_enabled_) throw std::logic_error("tree was built without select support");
        if (sigma < 1) throw std::domain_error("sigma must be positive");
        std::uint64_t j = 0;
        std::int64_t local = sigma;
        for (unsigned l = 0; l < depth_; ++l) {
            auto [c, below] = small(l, j).select_with_below(local);
            local -= below;
            j = j * lay_.B + c;
        }
        return j;
    }

    PackedSmallArray<Backend>& small(unsigned level, std::uint64_t node) {
        return smalls_[level_first_[level] + node];
    }
    const PackedSmallArray<Backend>& small(unsigned level, std::uint64_t node) const {
        return smalls_[level_first_[level] + node];
    }
    std::uint64_t small_count() const { return smalls_.size(); }

private:
    Backend* mem_;
    std::uint64_t n_;
    unsigned delta_bits_;
    bool select_enabled_;
    PackedLayout lay_;
    unsigned depth_ = 0;
    std::uint64_t padded_ = 0;
    std::vector<PackedSmallArray<Backend>> smalls_;
    std::vector<std::uint64_t> level_first_;
};

// Type-erased view used by the workload runner and the bench driver.
class PartialSums {
public:
    virtual ~PartialSums() = default;
    virtual std::uint64_t size() const = 0;
    virtual void update(std::uint64_t k, std::int64_t delta) = 0;
    virtual std::int64_t sum(std::uint64_t k) = 0;
    virtual std::uint64_t select(std::int64_t sigma) = 0;
};

template <class S>
class PartialSumsAdapter final : public PartialSums {
public:
    template <class... Args>
    explicit PartialSumsAdapter(Args&&... args) : impl_(std::forward<Args>(args)...) {}

    std::uint64_t size() const override { return impl_.size(); }
    void update(std::uint64_t k, std::int64_t delta) override { impl_.update(k, delta); }
    std::int64_t sum(std::uint64_t k) override { return impl_.sum(k); }
    std::uint64_t select(std::int64_t sigma) override { return impl_.select(sigma); }

    S& impl() { return impl_; }

private:
    S impl_;
};

} // namespace probelab
