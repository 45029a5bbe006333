#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "probelab/words.hpp"

namespace probelab {

// Operation index of a cell nobody has written yet.
inline constexpr std::int64_t initial_write = -1;

struct ProbeEvent {
    std::int64_t op_index;
    bool is_write;
    std::uint64_t address;
    // Chronogram of the cell as observed by this probe: for reads, the op
    // that last wrote the cell; for writes, the op whose value is being
    // overwritten. initial_write if the cell was never written.
    std::int64_t last_write_op;
};

using ProbeTrace = std::vector<ProbeEvent>;

// Count of read events whose cell was last written by a strictly earlier
// operation. Reads of initial cells and same-op read-after-write don't count.
inline std::uint64_t total_cross_reads(const ProbeTrace& trace) {
    std::uint64_t c = 0;
    for (const ProbeEvent& e : trace)
        if (!e.is_write && e.last_write_op >= 0 && e.last_write_op < e.op_index) ++c;
    return c;
}

// Simulated memory of b-bit cells that records every probe together with the
// operation that issued it. Addresses are handed out by alloc() and must stay
// below 2^b.
class TracedMemory {
public:
    explicit TracedMemory(unsigned cell_bits) : cell_bits_(cell_bits) {
        if (cell_bits_ == 0 || cell_bits_ > 128)
            throw std::invalid_argument("cell_bits must be in [1,128]");
    }

    unsigned cell_bits() const { return cell_bits_; }

    std::uint64_t alloc(std::uint64_t count) {
        const std::uint64_t base = cells_.size();
        if (cell_bits_ < 64 && base + count > (std::uint64_t{1} << cell_bits_))
            throw std::length_error("address space of 2^b cells exhausted");
        cells_.resize(base + count, Cell{});
        return base;
    }

    void set_current_op(std::int64_t op_index) {
        if (op_index < current_op_)
            throw std::logic_error("operation index must be nondecreasing");
        current_op_ = op_index;
    }

    std::int64_t current_op() const { return current_op_; }

    word128 read(std::uint64_t addr) {
        const Cell& c = cell_at(addr);
        trace_.push_back({current_op_, false, addr, c.last_write_op});
        ++reads_;
        return c.value;
    }

    void write(std::uint64_t addr, word128 value) {
        Cell& c = cell_at(addr);
        if (!fits_bits(value, cell_bits_))
            throw std::range_error("value does not fit in a cell");
        trace_.push_back({current_op_, true, addr, c.last_write_op});
        ++writes_;
        c.value = value;
        c.last_write_op = current_op_;
    }

    // Peek without recording a probe; test/verification use only.
    word128 peek(std::uint64_t addr) const { return cell_at(addr).value; }
    std::int64_t last_write_op(std::uint64_t addr) const { return cell_at(addr).last_write_op; }

    const ProbeTrace& trace() const { return trace_; }
    std::uint64_t reads() const { return reads_; }
    std::uint64_t writes() const { return writes_; }
    std::uint64_t size() const { return cells_.size(); }

    static constexpr bool traced = true;

private:
    struct Cell {
        word128 value = 0; // zero-initialized memory
        std::int64_t last_write_op = initial_write;
    };

    Cell& cell_at(std::uint64_t addr) {
        if (addr >= cells_.size()) throw std::range_error("cell address out of range");
        return cells_[addr];
    }
    const Cell& cell_at(std::uint64_t addr) const {
        if (addr >= cells_.size()) throw std::range_error("cell address out of range");
        return cells_[addr];
    }

    unsigned cell_bits_;
    std::vector<Cell> cells_;
    std::int64_t current_op_ = 0;
    ProbeTrace trace_;
    std::uint64_t reads_ = 0;
    std::uint64_t writes_ = 0;
};

// Drop-in backend with the same surface and no tracing, for runs where only
// the outputs matter.
class PlainMemory {
public:
    explicit PlainMemory(unsigned cell_bits = 64) : cell_bits_(cell_bits) {}

    unsigned cell_bits() const { return cell_bits_; }

    std::uint64_t alloc(std::uint64_t count) {
        const std::uint64_t base = cells_.size();
        cells_.resize(base + count, 0);
        return base;
    }

    void set_current_op(std::int64_t) {}

    word128 read(std::uint64_t addr) { return cells_.at(addr); }
    void write(std::uint64_t addr, word128 value) { cells_.at(addr) = value; }
    word128 peek(std::uint64_t addr) const { return cells_.at(addr); }

    std::uint64_t size() const { return cells_.size(); }

    static constexpr bool traced = false;

private:
    unsigned cell_bits_;
    std::vector<word128> cells_;
};

} // namespace probelab
