#pragma once

#include "oll/errors.hpp"
#include "oll/game_core.hpp"
#include "oll/interfaces.hpp"

namespace oll {

// Baseline adversary: bisect the largest suitable gap of the whole
// configuration. With an empty configuration it probes the range midpoint.
// Tracks mingap(Y^t) so tests can audit the bisection dynamics.
class MidpointAdversary : public Adversary {
public:
    explicit MidpointAdversary(const GameConfig& config)
        : r_(config.r), tracker_(config.initial_keys) {}

    Int choose(std::int64_t /*t*/, const Configuration& current) override {
        if (current.empty()) {
            last_left_ = 0;
            last_right_ = 0;
            Int key = (1 + r_) / 2;
            return key;
        }
        auto gap = largest_suitable_gap(current, Segment(1, r_ + 1));
        if (current.size() >= 2 && gap) {
            last_left_ = gap->left;
            last_right_ = gap->right;
            return gap_midpoint(*gap);
        }
        // Fewer than two keys, or all interior gaps exhausted: try the open
        // range below the minimum, then above the maximum.
        const Int& lo = current.key_at_rank(0);
        const Int& hi = current.key_at_rank(current.size() - 1);
        if (lo >= 2) {
            last_left_ = 0;
            last_right_ = lo;
            return lo / 2 > 0 ? lo / 2 : Int(1);
        }
        if (hi + 1 <= r_) {
            last_left_ = hi;
            last_right_ = 0;
            return (hi + 1 + r_) / 2;
        }
        throw AdversaryStuckError("no suitable gap in [1, r]");
    }

    void observe(const StepTrace& trace, const Configuration&) override {
        if (last_left_ > 0 && last_right_ > 0)
            tracker_.on_insert(last_left_, trace.loaded_key, last_right_);
        else if (last_right_ > 0)
            tracker_.on_insert_boundary(last_right_, trace.loaded_key);
        else if (last_left_ > 0)
            tracker_.on_insert_boundary(last_left_, trace.loaded_key);
        mingap_series_.push_back(tracker_.known() ? tracker_.value() : Int(0));
    }

    const std::vector<Int>& mingap_series() const { return mingap_series_; }

private:
    Int r_;
    Int last_left_ = 0;
    Int last_right_ = 0;
    MingapTracker tracker_;
    std::vector<Int> mingap_series_;
};

}  // namespace oll
