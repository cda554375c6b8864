#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "oll/configuration.hpp"
#include "oll/errors.hpp"
#include "oll/ints.hpp"
#include "oll/keys.hpp"
#include "oll/segment.hpp"

namespace oll {

// Parameters of one game: n keys are loaded into m cells, keys drawn from
// [1, r]. initial_keys (Y0) are placed by the algorithm at no cost before
// step 1; with a nonempty Y0 the adversary is confined to (min Y0, max Y0)
// and r plays no further role.
struct GameConfig {
    Int n = 1;
    Int m = 1;
    Int r = 2;
    std::vector<Int> initial_keys;
    std::uint64_t seed = 0;

    std::size_t n0() const { return initial_keys.size(); }

    void validate() const {
        if (n < 1) throw std::invalid_argument("GameConfig: n must be >= 1");
        if (n + Int(initial_keys.size()) > m)
            throw std::invalid_argument("GameConfig: need n + |Y0| <= m");
        if (initial_keys.empty() && m >= r)
            throw std::invalid_argument("GameConfig: need m < r for an empty Y0");
        std::set<Int> seen;
        for (const Int& k : initial_keys) {
            if (k < 1 || k > r) throw std::invalid_argument("GameConfig: initial key outside [1, r]");
            if (!seen.insert(k).second)
                throw std::invalid_argument("GameConfig: duplicate initial key");
        }
    }
};

struct Relocation {
    KeyId id;
    Int from;  // equal to `to` only for the inserted key, which has no old cell
    Int to;
    bool inserted;
};

// Per-step record: the loaded key, every relocated key with its trail, the
// busy region as maximal segments, and the running cost chi.
struct StepTrace {
    std::int64_t t = 0;
    KeyId loaded_id = 0;
    Int loaded_key;
    std::vector<Relocation> relocated;
    std::vector<Segment> busy;
    Int chi;

    bool busy_connected() const { return busy.size() == 1; }
    Segment busy_hull() const {
        Segment h = busy.front();
        for (const Segment& s : busy) h = h.hull(s);
        return h;
    }
};

// Minimum difference between adjacent keys; requires at least two keys.
inline Int mingap(const std::vector<Int>& keys) {
    if (keys.size() < 2) throw std::invalid_argument("mingap: need at least 2 keys");
    std::vector<Int> sorted(keys);
    std::sort(sorted.begin(), sorted.end());
    Int best = sorted[1] - sorted[0];
    for (std::size_t i = 2; i < sorted.size(); ++i)
        best = std::min(best, Int(sorted[i] - sorted[i - 1]));
    return best;
}

// Tracks mingap(Y^t) incrementally: inserting y into the gap (yl, yr)
// replaces one adjacent difference by its two halves.
class MingapTracker {
public:
    explicit MingapTracker(const std::vector<Int>& initial_keys) {
        if (initial_keys.size() >= 2) current_ = mingap(initial_keys);
    }

    void on_insert(const Int& left, const Int& key, const Int& right) {
        note(key - left);
        note(right - key);
    }
    void on_insert_boundary(const Int& neighbor, const Int& key) {
        note(key > neighbor ? Int(key - neighbor) : Int(neighbor - key));
    }

    bool known() const { return current_.has_value(); }
    const Int& value() const { return *current_; }

private:
    void note(Int gap) {
        if (!current_ || gap < *current_) current_ = std::move(gap);
    }
    std::optional<Int> current_;
};

struct Gap {
    Int left;
    Int right;
    Int length() const { return right - left; }
};

// Largest gap between order-adjacent keys that are both stored inside the
// segment and leave room for a new key (length >= 2). Ties break to the
// smaller left key. Absence is a value, not an error.
inline std::optional<Gap> largest_suitable_gap(const Configuration& cfg, const Segment& segment) {
    auto [first, last] = cfg.ranks_in_cells(segment.lo, segment.hi);
    std::optional<Gap> best;
    for (std::size_t r = first; r + 1 < last; ++r) {
        Gap g{cfg.key_at_rank(r), cfg.key_at_rank(r + 1)};
        if (g.length() < 2) continue;
        if (!best || g.length() > best->length()) best = std::move(g);
    }
    return best;
}

inline Int gap_midpoint(const Gap& gap) {
    if (gap.length() < 2) throw std::invalid_argument("gap_midpoint: gap too short");
    return (gap.left + gap.right) / 2;
}

// Diffs the previous configuration against the algorithm's response for the
// enlarged key set: computes Rel^t, the per-key trails, the busy region as
// maximal segments, and accumulates chi. Throws InvalidPlacementError if the
// response is not a storage function for exactly keys(prev) + {new_key}.
inline StepTrace apply_placement(const Configuration& prev, KeyId new_id,
                                 const Configuration& next, const Int& m, std::int64_t t,
                                 const Int& chi_before) {
    next.validate(m);
    if (!next.keys_are(prev, new_id))
        throw InvalidPlacementError("key set is not old keys plus the loaded key");

    StepTrace trace;
    trace.t = t;
    trace.loaded_id = new_id;
    trace.loaded_key = next.store()->value(new_id);

    std::vector<Segment> trails;
    const std::size_t ins_rank = next.rank_of(trace.loaded_key);
    for (std::size_t r = 0; r < next.size(); ++r) {
        if (r == ins_rank) {
            trace.relocated.push_back({new_id, next.cell_at_rank(r), next.cell_at_rank(r), true});
            trails.emplace_back(next.cell_at_rank(r), next.cell_at_rank(r));
            continue;
        }
        const std::size_t pr = r < ins_rank ? r : r - 1;
        const Int& before = prev.cell_at_rank(pr);
        const Int& after = next.cell_at_rank(r);
        if (before != after) {
            trace.relocated.push_back({next.id_at_rank(r), before, after, false});
            trails.emplace_back(std::min(before, after), std::max(before, after));
        }
    }

    std::sort(trails.begin(), trails.end(),
              [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
    for (const Segment& seg : trails) {
        if (!trace.busy.empty() && seg.lo <= trace.busy.back().hi + 1 &&
            seg.hi <= trace.busy.back().hi)
            continue;
        if (!trace.busy.empty() && seg.lo <= trace.busy.back().hi + 1)
            trace.busy.back().hi = seg.hi;
        else
            trace.busy.push_back(seg);
    }

    trace.chi = chi_before + Int(trace.relocated.size());
    return trace;
}

}  // namespace oll
