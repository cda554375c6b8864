#pragma once

#include <ostream>
#include <stdexcept>

#include "oll/ints.hpp"

namespace oll {

// A segment is an inclusive subinterval [lo, hi] of the cell range [1, m].
struct Segment {
    Int lo;
    Int hi;

    Segment() : lo(1), hi(1) {}
    Segment(Int lo_, Int hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (lo > hi) throw std::invalid_argument("Segment: lo > hi");
        if (lo < 1) throw std::invalid_argument("Segment: lo < 1");
    }

    Int size() const { return hi - lo + 1; }

    bool contains(const Int& cell) const { return lo <= cell && cell <= hi; }
    bool contains(const Segment& other) const { return lo <= other.lo && other.hi <= hi; }
    bool intersects(const Segment& other) const { return lo <= other.hi && other.lo <= hi; }

    // Smallest segment covering both operands.
    Segment hull(const Segment& other) const {
        return Segment(lo < other.lo ? lo : other.lo, hi > other.hi ? hi : other.hi);
    }

    bool operator==(const Segment& other) const { return lo == other.lo && hi == other.hi; }
    bool operator!=(const Segment& other) const { return !(*this == other); }
};

inline std::ostream& operator<<(std::ostream& os, const Segment& s) {
    return os << "[" << s.lo << "," << s.hi << "]";
}

}  // namespace oll
