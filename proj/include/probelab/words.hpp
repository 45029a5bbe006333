#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace probelab {

// Cells are up to 128 bits wide; all word plumbing goes through this type.
using word128 = unsigned __int128;
using int128 = __int128;

inline constexpr word128 word_one = 1;

// All-ones mask of the low `bits` bits. bits == 128 yields the full word.
inline constexpr word128 low_mask(unsigned bits) {
    return bits >= 128 ? ~word128{0} : (word_one << bits) - 1;
}

inline constexpr bool fits_bits(word128 v, unsigned bits) {
    return bits >= 128 || v <= low_mask(bits);
}

// Two's complement encode/decode of a signed value in `bits` bits.
inline constexpr word128 encode_signed(int128 v, unsigned bits) {
    return static_cast<word128>(v) & low_mask(bits);
}

inline constexpr int128 decode_signed(word128 raw, unsigned bits) {
    raw &= low_mask(bits);
    if (bits < 128 && (raw >> (bits - 1)) != 0)
        return static_cast<int128>(raw) - static_cast<int128>(word_one << bits);
    return static_cast<int128>(raw);
}

// Signed range check: does v fit in `bits`-bit two's complement?
inline constexpr bool fits_signed(int128 v, unsigned bits) {
    if (bits >= 128) return true;
    const int128 hi = static_cast<int128>(word_one << (bits - 1));
    return v >= -hi && v < hi;
}

inline int popcount128(word128 x) {
    return __builtin_popcountll(static_cast<std::uint64_t>(x)) +
           __builtin_popcountll(static_cast<std::uint64_t>(x >> 64));
}

inline std::string to_string(word128 x) {
    if (x == 0) return "0";
    std::string s;
    while (x != 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<unsigned>(x % 10)));
        x /= 10;
    }
    return s;
}

inline std::string to_string(int128 x) {
    if (x < 0) return "-" + to_string(static_cast<word128>(-x));
    return to_string(static_cast<word128>(x));
}

inline unsigned ceil_log2(std::uint64_t x) {
    unsigned k = 0;
    while ((std::uint64_t{1} << k) < x) ++k;
    return k;
}

inline bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

} // namespace probelab
