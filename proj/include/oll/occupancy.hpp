#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "oll/configuration.hpp"
#include "oll/ints.hpp"
#include "oll/segment.hpp"

namespace oll {

// Sparse weighted view of the array: the sorted occupied cells plus an
// old/new flag per key. Keys of Y0 weigh 1, later keys weigh lambda. Weights
// are kept as exact integer counts (#old, #new); lambda is applied only when
// a weight is evaluated, so no floating error accumulates across steps.
class WeightedOccupancy {
public:
    struct Counts {
        std::int64_t old_keys = 0;
        std::int64_t new_keys = 0;
    };

    WeightedOccupancy() : lambda_(1.0) {}

    // cells must be strictly increasing; is_new aligned with cells.
    WeightedOccupancy(std::vector<Int> cells, const std::vector<bool>& is_new, double lambda)
        : cells_(std::move(cells)), lambda_(lambda) {
        check_lambda(lambda);
        if (is_new.size() != cells_.size())
            throw std::invalid_argument("WeightedOccupancy: flag/cell size mismatch");
        for (std::size_t i = 1; i < cells_.size(); ++i)
            if (cells_[i - 1] >= cells_[i])
                throw std::invalid_argument("WeightedOccupancy: cells not strictly increasing");
        prefix_new_.resize(cells_.size() + 1, 0);
        for (std::size_t i = 0; i < cells_.size(); ++i)
            prefix_new_[i + 1] = prefix_new_[i] + (is_new[i] ? 1 : 0);
    }

    // View of a game configuration: a key is old iff its id was interned
    // among the first n0 (the initial set Y0).
    static WeightedOccupancy from_configuration(const Configuration& cfg, std::size_t n0,
                                                double lambda) {
        std::vector<bool> is_new(cfg.size());
        for (std::size_t r = 0; r < cfg.size(); ++r) is_new[r] = cfg.id_at_rank(r) >= n0;
        return WeightedOccupancy(cfg.cells(), is_new, lambda);
    }

    double lambda() const { return lambda_; }
    std::size_t key_count() const { return cells_.size(); }
    const std::vector<Int>& cells() const { return cells_; }
    bool is_new_at(std::size_t idx) const { return prefix_new_[idx + 1] > prefix_new_[idx]; }

    Counts count_range(const Segment& s) const {
        auto first = std::lower_bound(cells_.begin(), cells_.end(), s.lo);
        auto last = std::upper_bound(cells_.begin(), cells_.end(), s.hi);
        const auto a = static_cast<std::size_t>(first - cells_.begin());
        const auto b = static_cast<std::size_t>(last - cells_.begin());
        Counts c;
        c.new_keys = prefix_new_[b] - prefix_new_[a];
        c.old_keys = static_cast<std::int64_t>(b - a) - c.new_keys;
        return c;
    }

    double weight(const Segment& s) const {
        const Counts c = count_range(s);
        return static_cast<double>(c.old_keys) + lambda_ * static_cast<double>(c.new_keys);
    }

    double total_weight() const {
        const std::int64_t n = static_cast<std::int64_t>(cells_.size());
        const std::int64_t nn = prefix_new_.back();
        return static_cast<double>(n - nn) + lambda_ * static_cast<double>(nn);
    }

    static void check_lambda(double lambda) {
        const bool ok = lambda == 1.0 || (lambda > 0.0 && lambda <= 0.5);
        if (!ok) throw std::invalid_argument("lambda must be 1 or in (0, 1/2]");
    }

private:
    std::vector<Int> cells_;
    std::vector<std::int64_t> prefix_new_;
    double lambda_;
};

}  // namespace oll
