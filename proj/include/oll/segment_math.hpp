#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "oll/ints.hpp"
#include "oll/occupancy.hpp"
#include "oll/segment.hpp"

namespace oll {

// Pure functions over weighted occupancies: density, kappa-potential, middle,
// densify, balance, W-block selection and the balancedness predicates.

// Potential comparisons are done in log space; scores closer than this are
// ties, resolved by the deterministic (lo, size) rule.
inline constexpr double kPotentialTieEps = 1e-12;

inline double density(const WeightedOccupancy& occ, const Segment& s) {
    return occ.weight(s) / to_double(s.size());
}

// log of the kappa-potential |S| * rho(S)^(1/kappa), i.e.
// ln|S| + (1/kappa) ln rho(S). Returns -inf for zero weight.
inline double log_potential(const WeightedOccupancy& occ, const Segment& s, double kappa) {
    if (kappa <= 0.0) throw std::invalid_argument("log_potential: kappa must be positive");
    const double w = occ.weight(s);
    if (w <= 0.0) return -std::numeric_limits<double>::infinity();
    const double sz = to_double(s.size());
    return std::log(sz) + (1.0 / kappa) * std::log(w / sz);
}

// Central piece after trimming floor(|s|/3) cells from each side.
inline Segment middle(const Segment& s) {
    const Int sz = s.size();
    if (sz < 3) throw std::invalid_argument("middle: segment size below 3");
    const Int trim = sz / 3;
    return Segment(s.lo + trim, s.hi - trim);
}

namespace detail {

// Dense snapshot of the weights of one segment, offsets 0..L-1.
struct DenseWeights {
    std::vector<double> prefix;  // prefix[i] = weight of first i cells
    std::size_t size = 0;

    DenseWeights(const WeightedOccupancy& occ, const Segment& t) {
        size = to_index(t.size(), kMaxDenseSegment, "dense segment scan");
        prefix.assign(size + 1, 0.0);
        const auto& cells = occ.cells();
        auto first = std::lower_bound(cells.begin(), cells.end(), t.lo);
        auto last = std::upper_bound(cells.begin(), cells.end(), t.hi);
        std::vector<double> w(size, 0.0);
        for (auto it = first; it != last; ++it) {
            const auto off = static_cast<std::size_t>(Int(*it - t.lo).convert_to<std::uint64_t>());
            const auto idx = static_cast<std::size_t>(it - cells.begin());
            w[off] = occ.is_new_at(idx) ? occ.lambda() : 1.0;
        }
        for (std::size_t i = 0; i < size; ++i) prefix[i + 1] = prefix[i] + w[i];
    }

    double window(std::size_t start, std::size_t len) const {
        return prefix[start + len] - prefix[start];
    }
};

}  // namespace detail

// Subsegment of t_seg maximizing the kappa-potential. The scan covers every
// subsegment, organised size-major: for a fixed size the score is monotone in
// the window weight, so the per-size champion is the max-weight window with
// smallest lo, and the champions are then compared in log space with the
// (lo, size) tie rule. Equivalent to the quadratic all-subsegments scan.
inline Segment densify(const WeightedOccupancy& occ, const Segment& t_seg, double kappa) {
    if (kappa <= 0.0) throw std::invalid_argument("densify: kappa must be positive");
    const detail::DenseWeights dw(occ, t_seg);
    const std::size_t L = dw.size;
    if (dw.window(0, L) <= 0.0) throw std::invalid_argument("densify: zero-weight segment");

    struct Champion {
        double score;
        std::size_t lo;
        std::size_t len;
    };
    std::vector<Champion> champions;
    champions.reserve(L);
    double best_score = -std::numeric_limits<double>::infinity();
    const double inv_kappa = 1.0 / kappa;
    for (std::size_t len = 1; len <= L; ++len) {
        double best_w = -1.0;
        std::size_t best_lo = 0;
        for (std::size_t start = 0; start + len <= L; ++start) {
            const double w = dw.window(start, len);
            if (w > best_w) {
                best_w = w;
                best_lo = start;
            }
        }
        if (best_w <= 0.0) continue;
        const double sz = static_cast<double>(len);
        const double score = std::log(sz) + inv_kappa * std::log(best_w / sz);
        champions.push_back({score, best_lo, len});
        if (score > best_score) best_score = score;
    }
    // Ties within kPotentialTieEps of the maximum resolve to smallest lo,
    // then smallest size.
    const Champion* winner = nullptr;
    for (const Champion& c : champions) {
        if (c.score < best_score - kPotentialTieEps) continue;
        if (winner == nullptr || c.lo < winner->lo ||
            (c.lo == winner->lo && c.len < winner->len))
            winner = &c;
    }
    return Segment(t_seg.lo + Int(winner->lo), t_seg.lo + Int(winner->lo + winner->len - 1));
}

// middle(densify(T)).
inline Segment balance(const WeightedOccupancy& occ, const Segment& t_seg, double kappa) {
    const Segment d = densify(occ, t_seg, kappa);
    if (d.size() < 3)
        throw std::invalid_argument("balance: densify result smaller than 3 cells");
    return middle(d);
}

// Partition [1, m] into blocks of ceil(n/2) cells, the final block absorbing
// the remainder, and return the densest block (ties to the leftmost). Only
// blocks that hold keys are materialised, so m may be astronomically large.
inline Segment pick_W(const WeightedOccupancy& occ, const Int& m, const Int& n) {
    const Int block = (n + 1) / 2;
    if (block < 1 || m < block) throw std::invalid_argument("pick_W: need m >= ceil(n/2)");
    const Int nblocks = m / block;

    auto block_bounds = [&](const Int& idx) {
        Segment s(idx * block + 1, (idx + 1) * block);
        if (idx == nblocks - 1) s.hi = m;  // last block absorbs the remainder
        return s;
    };

    // Group key weights by block index.
    std::map<Int, double> weight_by_block;
    const auto& cells = occ.cells();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        Int idx = (cells[i] - 1) / block;
        if (idx > nblocks - 1) idx = nblocks - 1;
        weight_by_block[idx] += occ.is_new_at(i) ? occ.lambda() : 1.0;
    }
    if (weight_by_block.empty()) return block_bounds(0);

    const Int* best_idx = nullptr;
    double best_rho = -1.0;
    for (const auto& [idx, w] : weight_by_block) {
        const Segment b = block_bounds(idx);
        const double rho = w / to_double(b.size());
        if (rho > best_rho) {  // strict: map order gives leftmost on ties
            best_rho = rho;
            best_idx = &idx;
        }
    }
    return block_bounds(*best_idx);
}

namespace detail {

// Extremal window density over all subsegments of size >= ceil(|s|/4).
// Sliding windows keep the probe O(1).
template <bool Max>
inline double extremal_subsegment_density(const WeightedOccupancy& occ, const Segment& s) {
    const DenseWeights dw(occ, s);
    const std::size_t L = dw.size;
    const std::size_t min_len = (L + 3) / 4;  // ceil(|s|/4)
    double extreme = Max ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
    for (std::size_t len = min_len; len <= L; ++len) {
        for (std::size_t start = 0; start + len <= L; ++start) {
            const double rho = dw.window(start, len) / static_cast<double>(len);
            if (Max ? rho > extreme : rho < extreme) extreme = rho;
        }
    }
    return extreme;
}

}  // namespace detail

inline constexpr double kBalanceEps = 1e-9;

// Every subsegment of size >= |s|/4 has density at most rho(s) * 4^kappa.
inline bool is_upper_balanced(const WeightedOccupancy& occ, const Segment& s, double kappa) {
    const double bound = density(occ, s) * std::pow(4.0, kappa);
    return detail::extremal_subsegment_density<true>(occ, s) <= bound + kBalanceEps;
}

// Every subsegment of size >= |s|/4 has density at least rho(s) * 4^-kappa.
inline bool is_lower_balanced(const WeightedOccupancy& occ, const Segment& s, double kappa) {
    const double bound = density(occ, s) * std::pow(4.0, -kappa);
    return detail::extremal_subsegment_density<false>(occ, s) >= bound - kBalanceEps;
}

}  // namespace oll
