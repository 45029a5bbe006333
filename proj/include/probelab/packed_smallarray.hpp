#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>

#include "probelab/packed_layout.hpp"

namespace probelab {

// Constant-time partial sums over B elements, kept as two packed words:
// V holds prefix-sum snapshots, T the deltas applied since. S[i] = V[i]+T[i].
//
// sum_only mode keeps T bounded with an incremental round-robin fold of one
// T field into V per update. with_select mode instead rebuilds everything
// every B^4 updates, splitting the sums into runs separated by gaps too wide
// for B^4 updates to close; select then only ever has to look at the run of
// the successor in V, the run before it, or the single element after it.
enum class SmallArrayMode { sum_only, with_select };

template <class Backend>
class PackedSmallArray {
public:
    PackedSmallArray(Backend& mem, const PackedLayout& layout, SmallArrayMode mode,
                     SuccessorStrategy strategy = SuccessorStrategy::broadcast_compare)
        : mem_(&mem), lay_(layout), mode_(mode), strategy_(strategy) {
        if (lay_.word_bits() + lay_.counter_bits > mem.cell_bits())
            throw std::invalid_argument("layout does not fit the cell width");
        base_ = mem.alloc(mode_ == SmallArrayMode::with_select ? 4 : 2);
        if (mode_ == SmallArrayMode::with_select) {
            // all-zero array forms a single run
            word128 len = 0;
            for (unsigned i = 0; i < lay_.B; ++i) len = lay_.with_field(len, i, lay_.B);
            mem_->write(addr_len(), len);
        }
    }

    const PackedLayout& layout() const { return lay_; }
    SmallArrayMode mode() const { return mode_; }
    SuccessorStrategy strategy() const { return strategy_; }

    std::uint64_t addr_V() const { return base_; }
    std::uint64_t addr_T() const { return base_ + 1; }
    std::uint64_t addr_rep() const { return base_ + 2; }
    std::uint64_t addr_len() const { return base_ + 3; }

    void update(unsigned i, std::int64_t delta) {
        if (i >= lay_.B) throw std::out_of_range("index out of range");
        if (delta >= (std::int64_t{1} << lay_.delta) || delta <= -(std::int64_t{1} << lay_.delta))
            throw std::range_error("delta does not fit in delta bits");

        word128 t = mem_->read(addr_T());
        const std::uint64_t c = lay_.counter(t);
        t = broadcast_suffix_add(t, i, delta, lay_);

        if (mode_ == SmallArrayMode::sum_only) {
            // fold one T field into V, round robin over updates
            word128 v = mem_->read(addr_V());
            const unsigned j = lay_.B > 1 ? static_cast<unsigned>(c) : 0;
            const std::int64_t folded = lay_.field_signed(v, j) + lay_.field_signed(t, j);
            if (!fits_signed(folded, lay_.field_bits))
                throw std::overflow_error("prefix sum exceeds field capacity");
            v = lay_.with_field(v, j, encode_signed(folded, lay_.field_bits));
            t = lay_.with_field(t, j, 0);
            t = lay_.with_counter(t, lay_.B > 1 ? (c + 1) % lay_.B : 0);
            mem_->write(addr_V(), v);
            mem_->write(addr_T(), t);
        } else {
            t = lay_.with_counter(t, c + 1);
            mem_->write(addr_T(), t);
            if (c + 1 >= lay_.rebuild_period()) rebuild();
        }
    }

    std::int64_t sum(unsigned k) const {
        if (k >= lay_.B) throw std::out_of_range("index out of range");
        const word128 v = mem_->read(addr_V());
        const word128 t = mem_->read(addr_T());
        return lay_.field_signed(v, k) + lay_.field_signed(t, k);
    }

    // What the last select looked at; lets tests check the candidate
    // discipline (everything inspected lies in the successor's run, the run
    // ending just before it, or the single element after the run).
    struct SelectInspection {
        unsigned successor = 0;   // first V field >= sigma (B if none)
        unsigned examined_lo = 0; // field range the parallel compare touched
        unsigned examined_hi = 0;
        unsigned answer = 0;
        int resolved_case = 0;    // 0: run at k, 1: run ending at k-1, 2: k+len(k)
    };

    unsigned select(std::int64_t sigma) { return select_with_below(sigma).first; }

    // Returns the answer index i and S[i-1], computed from the words already
    // probed, so tree descent does not re-read cells.
    std::pair<unsigned, std::int64_t> select_with_below(std::int64_t sigma) {
        if (mode_ != SmallArrayMode::with_select)
            throw std::logic_error("select requires a select-enabled array");
        const word128 v = mem_->read(addr_V());
        const word128 t = mem_->read(addr_T());
        const word128 rep = mem_->read(addr_rep());
        const word128 len = mem_->read(addr_len());

        const auto S = [&](unsigned i) {
            return lay_.field_signed(v, i) + lay_.field_signed(t, i);
        };
        if (sigma < 1 || sigma > S(lay_.B - 1))
            throw std::domain_error("sigma outside the representable sum range");

        const unsigned k = packed_successor(v, sigma, lay_, strategy_);
        last_inspection_.successor = k;

        unsigned run_start = 0;
        int resolved = 0;
        if (k >= lay_.B) {
            run_start = static_cast<unsigned>(lay_.field(rep, lay_.B - 1));
            resolved = 1;
        } else if (k > 0 && sigma <= S(k - 1)) {
            run_start = static_cast<unsigned>(lay_.field(rep, k - 1));
            resolved = 1;
        } else {
            assert(static_cast<unsigned>(lay_.field(rep, k)) == k &&
                   "successor in V must be a run representative");
            const unsigned L = static_cast<unsigned>(lay_.field(len, k));
            if (k + L < lay_.B && sigma > S(k + L - 1)) {
                last_inspection_ = {k, k + L, k + L + 1, k + L, 2};
                return {k + L, S(k + L - 1)};
            }
            run_start = k;
        }

        const unsigned L = static_cast<unsigned>(lay_.field(len, run_start));
        const std::int64_t x = sigma - lay_.field_signed(v, run_start);
        const unsigned below = count_fields_less(t, x, run_start, run_start + L, lay_);
        const unsigned answer = run_start + below;
        last_inspection_ = {k, run_start, run_start + L, answer, resolved};
        return {answer, answer == 0 ? 0 : S(answer - 1)};
    }

    const SelectInspection& last_inspection() const { return last_inspection_; }

    // Fold T into the sums, re-split into runs separated by gaps of at least
    // B^4 * 2^delta, and reset the update budget.
    void rebuild() {
        if (mode_ != SmallArrayMode::with_select)
            throw std::logic_error("rebuild requires a select-enabled array");
        const word128 vold = mem_->read(addr_V());
        const word128 told = mem_->read(addr_T());

        std::int64_t s[128];
        for (unsigned i = 0; i < lay_.B; ++i) {
            s[i] = lay_.field_signed(vold, i) + lay_.field_signed(told, i);
            if (!fits_signed(s[i], lay_.field_bits))
                throw std::overflow_error("prefix sum exceeds field capacity");
        }

        const std::int64_t gap = lay_.run_gap();
        unsigned run_of[128];
        unsigned run_len[128];
        unsigned start = 0;
        for (unsigned i = 0; i < lay_.B; ++i) {
            if (i > 0 && s[i] - s[i - 1] >= gap) start = i;
            run_of[i] = start;
        }
        for (unsigned i = lay_.B; i-- > 0;) {
            run_len[i] = (i + 1 < lay_.B && run_of[i + 1] == run_of[i]) ? run_len[i + 1]
                                                                        : i - run_of[i] + 1;
        }

        word128 v = 0, t = 0, rep = 0, len = 0;
        for (unsigned i = 0; i < lay_.B; ++i) {
            v = lay_.with_field(v, i, encode_signed(s[run_of[i]], lay_.field_bits));
            t = lay_.with_field(t, i, encode_signed(s[i] - s[run_of[i]], lay_.field_bits));
            rep = lay_.with_field(rep, i, run_of[i]);
            len = lay_.with_field(len, i, run_len[i]);
        }
        t = lay_.with_counter(t, 0);
        mem_->write(addr_V(), v);
        mem_->write(addr_T(), t);
        mem_->write(addr_rep(), rep);
        mem_->write(addr_len(), len);
    }

private:
    Backend* mem_;
    PackedLayout lay_;
    SmallArrayMode mode_;
    SuccessorStrategy strategy_;
    std::uint64_t base_ = 0;
    SelectInspection last_inspection_{};
};

} // namespace probelab
