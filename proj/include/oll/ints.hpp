#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace oll {

// Keys, cell indices and array sizes are arbitrary-precision integers:
// key universes reach n*2^(n-1) and arrays reach 2^1024 cells.
using Int = boost::multiprecision::cpp_int;

inline Int pow2(unsigned e) { return Int(1) << e; }

// Exact floor division for nonnegative operands.
inline Int floor_div(const Int& a, const Int& b) {
    if (b <= 0) throw std::invalid_argument("floor_div: divisor must be positive");
    if (a < 0) throw std::invalid_argument("floor_div: negative dividend unsupported");
    return a / b;
}

// Lossless for small values; values beyond double range saturate to +inf,
// callers that care must go through log2_big instead.
inline double to_double(const Int& x) { return x.convert_to<double>(); }

// log2 of a positive big integer, accurate to ~1e-15 relative error even when
// the value overflows double.
inline double log2_big(const Int& x) {
    if (x <= 0) throw std::invalid_argument("log2_big: argument must be positive");
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x));
    if (bits <= 900) return std::log2(x.convert_to<double>());
    const unsigned shift = bits - 52;
    const double mant = Int(x >> shift).convert_to<double>();
    return std::log2(mant) + static_cast<double>(shift);
}

// log2(num/den) for positive big integers.
inline double log2_ratio(const Int& num, const Int& den) {
    return log2_big(num) - log2_big(den);
}

// Natural log counterpart.
inline double ln_big(const Int& x) { return log2_big(x) * std::log(2.0); }

// Operations that materialise dense per-cell state (potential scans, the
// packed-memory tree) are capped; adversary segments never exceed n + 1
// cells, so the cap only guards against misuse on astronomic inputs.
inline constexpr std::size_t kMaxDenseSegment = std::size_t(1) << 26;

// Guarded conversion to a machine index.
inline std::size_t to_index(const Int& x, std::size_t cap, const char* what) {
    if (x < 0 || x > Int(cap))
        throw std::invalid_argument(std::string(what) + ": value " + x.str() +
                                    " exceeds supported dense size " + std::to_string(cap));
    return x.convert_to<std::size_t>();
}

}  // namespace oll
