#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>

#include "probelab/words.hpp"

namespace probelab {

// Word layout for a packed array of B signed fields: each field takes
// field_bits bits plus one zero padding bit that absorbs carries during
// word-level parallel arithmetic. The top counter_bits of the word (above all
// fields) are reserved for a small update counter so that bookkeeping does
// not cost a separate cell probe.
struct PackedLayout {
    unsigned B = 0;
    unsigned delta = 0;
    unsigned field_bits = 0;
    unsigned capacity = 0;      // machine word size chosen at construction
    unsigned counter_bits = 0;  // reserved above the fields

    word128 ones_pattern = 0;   // low bit of every field
    word128 clean_mask = 0;     // all field bits, padding bits zero
    word128 pad_mask = 0;       // just the padding bits
    word128 fields_mask = 0;    // fields and padding together

    unsigned stride() const { return field_bits + 1; }
    unsigned word_bits() const { return B * stride(); }

    // Smallest field width that can hold a run-initial value below
    // B^5 * 2^delta plus B^4 update drifts, a sign bit, and the extra bit of
    // headroom needed by parallel comparisons.
    static unsigned min_field_bits(unsigned B, unsigned delta) {
        return delta + 5 * ceil_log2(B) + 2;
    }

    word128 field(word128 w, unsigned i) const {
        return (w >> (i * stride())) & low_mask(field_bits);
    }

    std::int64_t field_signed(word128 w, unsigned i) const {
        return static_cast<std::int64_t>(decode_signed(field(w, i), field_bits));
    }

    word128 with_field(word128 w, unsigned i, word128 raw) const {
        const unsigned s = i * stride();
        w &= ~(low_mask(field_bits) << s);
        return w | ((raw & low_mask(field_bits)) << s);
    }

    std::uint64_t counter(word128 w) const {
        if (counter_bits == 0) return 0;
        return static_cast<std::uint64_t>((w >> word_bits()) & low_mask(counter_bits));
    }

    word128 with_counter(word128 w, std::uint64_t c) const {
        if (counter_bits == 0) return w;
        w &= ~(low_mask(counter_bits) << word_bits());
        return w | (static_cast<word128>(c & static_cast<std::uint64_t>(low_mask(counter_bits)))
                    << word_bits());
    }

    std::uint64_t rebuild_period() const {
        std::uint64_t p = 1;
        for (int i = 0; i < 4; ++i) p *= B;
        return p; // B^4
    }

    // Gap threshold separating runs: B^4 * 2^delta.
    std::int64_t run_gap() const {
        return static_cast<std::int64_t>(rebuild_period()) << delta;
    }
};

// Layout with an explicit field width; used directly by tests and as the
// back half of make_packed_layout.
inline PackedLayout make_custom_layout(unsigned B, unsigned delta, unsigned field_bits,
                                       unsigned capacity, unsigned counter_bits = 0) {
    if (B < 1) throw std::invalid_argument("packed array needs at least one element");
    if (field_bits < 2 || field_bits > 62)
        throw std::invalid_argument("field width out of supported range");
    if (B * (field_bits + 1) + counter_bits > capacity)
        throw std::invalid_argument("packed layout does not fit the word");

    PackedLayout lay;
    lay.B = B;
    lay.delta = delta;
    lay.capacity = capacity;
    lay.counter_bits = counter_bits;
    lay.field_bits = field_bits;
    for (unsigned i = 0; i < B; ++i)
        lay.ones_pattern |= word_one << (i * lay.stride());
    lay.clean_mask = lay.ones_pattern * low_mask(lay.field_bits);
    lay.pad_mask = lay.ones_pattern << lay.field_bits;
    lay.fields_mask = low_mask(lay.word_bits());
    return lay;
}

// Builds the widest layout that fits: fields get all capacity left over after
// the counter reservation. Rejects combinations where that is narrower than
// the minimum safe width.
inline PackedLayout make_packed_layout(unsigned B, unsigned delta, unsigned capacity) {
    if (capacity != 64 && capacity != 128)
        throw std::invalid_argument("word capacity must be 64 or 128");
    if (B < 1) throw std::invalid_argument("packed array needs at least one element");
    if (delta < 1 || delta > 62) throw std::invalid_argument("delta out of supported range");

    const unsigned counter_bits = 4 * ceil_log2(B);
    if (counter_bits >= capacity)
        throw std::invalid_argument("packed layout does not fit the word");
    const unsigned avail = capacity - counter_bits;
    if (avail / B < 3) throw std::invalid_argument("packed layout does not fit the word");
    unsigned field_bits = avail / B - 1;
    if (field_bits > 62) field_bits = 62; // keep field values in int64 range
    if (field_bits < PackedLayout::min_field_bits(B, delta))
        throw std::invalid_argument("packed layout does not fit the word");
    return make_custom_layout(B, delta, field_bits, capacity, counter_bits);
}

// Largest B whose layout fits the given capacity, or 0 if even B=min_B fails.
inline unsigned max_packed_elements(unsigned delta, unsigned capacity, unsigned min_B = 1) {
    unsigned best = 0;
    for (unsigned B = min_B; B <= capacity; ++B) {
        try {
            make_packed_layout(B, delta, capacity);
            best = B;
        } catch (const std::invalid_argument&) {
            if (best != 0) break;
        }
    }
    return best;
}

// Adds v to every field at index >= k in one word-parallel step:
// shift the per-field ones pattern to wipe fields below k, multiply by the
// field-width two's complement digit of v, add, and force padding bits back
// to zero. Fields wrap modulo 2^field_bits; callers keep values in range.
inline word128 broadcast_suffix_add(word128 w, unsigned k, std::int64_t v,
                                    const PackedLayout& lay) {
    if (k >= lay.B) throw std::out_of_range("field index out of range");
    const std::int64_t cap = static_cast<std::int64_t>(low_mask(lay.field_bits - 1));
    if (v > cap || v < -cap)
        throw std::range_error("summand does not fit in field_bits-1 bits");

    const unsigned shift = k * lay.stride();
    const word128 pattern = (lay.ones_pattern >> shift) << shift;
    const word128 digit = encode_signed(v, lay.field_bits);
    const word128 spread = pattern * digit;
    const word128 sum = (w & lay.fields_mask) + spread;
    return (sum & lay.clean_mask) | (w & ~lay.fields_mask);
}

// Number of fields with index in [lo, hi) whose signed value is < x.
// Comparison is done on all fields at once: flip sign bits to make the order
// unsigned, do a guarded parallel subtract, then tally the surviving padding
// bits with one multiplication.
inline unsigned count_fields_less(word128 w, std::int64_t x, unsigned lo, unsigned hi,
                                  const PackedLayout& lay) {
    assert(lo <= hi && hi <= lay.B);
    if (lo >= hi) return 0;
    if (!fits_signed(x, lay.field_bits))
        return x > 0 ? hi - lo : 0;

    const word128 bias = lay.ones_pattern << (lay.field_bits - 1);
    const word128 u = (w & lay.clean_mask) ^ bias;
    const word128 ux = encode_signed(x, lay.field_bits) ^ (word_one << (lay.field_bits - 1));

    word128 range_ones = 0;
    for (unsigned i = lo; i < hi; ++i) range_ones |= word_one << (i * lay.stride());
    const word128 range_fields = range_ones * low_mask(lay.field_bits);
    const word128 range_pads = range_ones << lay.field_bits;

    // pad bit of field i survives the subtraction iff u_i >= ux
    const word128 q = ((u & range_fields) | range_pads) - range_ones * ux;
    const word128 ge_bits = (q & range_pads) >> lay.field_bits;

    // sum the per-field bits by accumulating them into the top field position
    const unsigned top = (lay.B - 1) * lay.stride();
    const word128 total = (ge_bits * lay.ones_pattern) >> top;
    const unsigned ge = static_cast<unsigned>(total & low_mask(lay.stride()));
    return (hi - lo) - ge;
}

// Index of the first field in the (nondecreasing) word with value >= x, or B
// if there is none. Single-probe successor search used by select.
enum class SuccessorStrategy { binary_search, broadcast_compare };

inline unsigned packed_successor(word128 w, std::int64_t x, const PackedLayout& lay,
                                 SuccessorStrategy strategy) {
    if (strategy == SuccessorStrategy::broadcast_compare)
        return count_fields_less(w, x, 0, lay.B, lay);
    unsigned lo = 0, hi = lay.B;
    while (lo < hi) {
        const unsigned mid = lo + (hi - lo) / 2;
        if (lay.field_signed(w, mid) < x) lo = mid + 1;
        else hi = mid;
    }
    return lo;
}

} // namespace probelab
