#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <vector>

#include "oll/errors.hpp"
#include "oll/interfaces.hpp"
#include "oll/segment.hpp"

namespace oll {

// An open segment is a maximal run of unoccupied cells together with the
// occupied cells bounding it. Usable means at least one interior cell.
struct OpenSegment {
    Int lo;
    Int hi;
    Int size() const { return hi - lo + 1; }
    bool usable() const { return size() >= 3; }
};

// Interior cell splitting s into two open segments of size >= |s|/2 each;
// leftmost qualifying cell.
inline Int middle_cell(const OpenSegment& s) {
    if (!s.usable()) throw std::invalid_argument("middle_cell: segment not usable");
    return s.lo + (s.size() - 1) / 2;
}

// Cells for `count` keys inside [s.lo, s.hi] with occupied ends, spaced so
// the count+1 resulting open segments all have size >= |s|/(count+1):
// x_j = lo + floor(j * (hi - lo) / (count + 1)).
inline std::vector<Int> even_spread_cells(const Segment& s, std::size_t count) {
    if (Int(count) > s.size() - 2)
        throw std::invalid_argument("even_spread: not enough unoccupied cells");
    const Int d = s.hi - s.lo;
    const Int q(count + 1);
    std::vector<Int> cells;
    cells.reserve(count);
    for (std::size_t j = 1; j <= count; ++j) cells.push_back(s.lo + Int(j) * d / q);
    return cells;
}

struct MarkedCell {
    Int cell;
    bool is_old;
};

// Decompose an array whose end cells hold old keys and whose excess
// (#old - #new) is positive into disjoint segments of excess exactly one that
// jointly cover every new key. Scans for minimal excess-1 useful prefixes:
// leading old cells with no new key behind them are shed, then the segment
// extends to the last old cell keeping the running excess at most one.
inline std::vector<Segment> excess_decompose(const std::vector<MarkedCell>& marks) {
    if (marks.empty() || !marks.front().is_old || !marks.back().is_old)
        throw std::invalid_argument("excess_decompose: array ends must hold old keys");
    std::vector<Int> old_cells;
    std::vector<std::int64_t> new_before;  // news with cell < old_cells[i]
    std::int64_t news = 0;
    for (const MarkedCell& mc : marks) {
        if (mc.is_old) {
            old_cells.push_back(mc.cell);
            new_before.push_back(news);
        } else {
            ++news;
        }
    }
    const std::int64_t total_old = static_cast<std::int64_t>(old_cells.size());
    if (total_old - news < 1)
        throw std::invalid_argument("excess_decompose: whole array must have positive excess");

    std::vector<Segment> out;
    std::size_t pos = 0;
    // suffix_excess = olds from pos onward minus news after old_cells[pos];
    // stays >= 1 throughout: shedding requires > 1, every emitted piece
    // consumes exactly 1 and skips no new keys.
    auto suffix_excess = [&](std::size_t p) {
        return static_cast<std::int64_t>(old_cells.size() - p) - (news - new_before[p]);
    };
    while (pos < old_cells.size()) {
        if (news - new_before[pos] == 0) break;  // nothing new remains to cover
        if (new_before[pos + 1] == new_before[pos] && suffix_excess(pos) > 1) {
            ++pos;  // old-only prefix and excess to spare: shed it
            continue;
        }
        std::size_t best = pos;
        for (std::size_t r = pos + 1; r < old_cells.size(); ++r) {
            const std::int64_t excess =
                static_cast<std::int64_t>(r - pos + 1) - (new_before[r] - new_before[pos]);
            if (excess <= 1) best = r;
        }
        if (best == pos)
            throw std::invalid_argument("excess_decompose: no excess-1 extension found");
        out.emplace_back(old_cells[pos], old_cells[best]);
        pos = best + 1;
    }
    return out;
}

struct AkAudit {
    std::int64_t rounds_started = 0;
    std::int64_t round_size_violations = 0;
};

namespace detail {

// Budget n_j(s): how many keys A_j is guaranteed to handle in an open segment
// of (rational) size at least s = num/den. For j = 1 the direct bound
// floor(log2(s/3)) + 2; for j >= 2 the proven floor(log2(s)^(j/3)).
inline Int ak_budget(int j, const Int& num, const Int& den) {
    const double l = log2_ratio(num, den);
    if (j == 1) {
        const double v = std::floor(l - std::log2(3.0)) + 2.0;
        return v < 0 ? Int(0) : Int(static_cast<long long>(v));
    }
    if (l <= 0) return 0;
    return Int(static_cast<long long>(std::floor(std::pow(l, static_cast<double>(j) / 3.0))));
}

class AkInstance {
public:
    AkInstance(int k, Segment seg, Int lo_key, Int hi_key, AkAudit* audit)
        : k_(k),
          seg_(std::move(seg)),
          lo_key_(std::move(lo_key)),
          hi_key_(std::move(hi_key)),
          audit_(audit) {
        if (k_ >= 2) {
            cap_ = ak_budget(k_, seg_.size(), 1);
            seed_target_ = ak_budget(k_ - 1, seg_.size(), 1);
        }
    }

    void insert(const Int& key) {
        if (key <= lo_key_ || key >= hi_key_)
            throw std::invalid_argument("ak: key outside segment bounds");
        if (k_ == 1) {
            insert_a1(key);
            ++loaded_;
            return;
        }
        if (cap_ >= 0 && loaded_ >= cap_)
            throw CapacityError("ak: instance budget of " + cap_.str() + " keys exhausted");
        if (seeding_) {
            if (!seed_child_)
                seed_child_ = std::make_unique<AkInstance>(k_ - 1, seg_, lo_key_, hi_key_, audit_);
            seed_child_->insert(key);
            ++loaded_;
            if (loaded_ >= seed_target_) finish_seeding();
            return;
        }
        if (round_loaded_ >= round_budget_) start_next_round();
        route_to_child(key);
        ++loaded_;
        ++round_loaded_;
    }

    void collect(std::map<Int, Int>& out) const {
        for (const auto& [key, cell] : local_) out.emplace(key, cell);
        if (seed_child_) seed_child_->collect(out);
        for (const auto& [lo, child] : children_) child->collect(out);
    }

private:
    void insert_a1(const Int& key) {
        auto [plo, phi, klo, khi] = neighbors(key);
        (void)klo;
        (void)khi;
        OpenSegment open{plo, phi};
        if (!open.usable())
            throw CapacityError("ak: no usable open segment compatible with the key");
        local_.emplace(key, middle_cell(open));
    }

    // Predecessor/successor cells and keys among this instance's own keys and
    // its segment boundaries.
    std::tuple<Int, Int, Int, Int> neighbors(const Int& key) const {
        auto it = local_.lower_bound(key);
        Int phi = seg_.hi, khi = hi_key_;
        if (it != local_.end()) {
            phi = it->second;
            khi = it->first;
        }
        Int plo = seg_.lo, klo = lo_key_;
        if (it != local_.begin()) {
            auto prev = std::prev(it);
            plo = prev->second;
            klo = prev->first;
        }
        return {plo, phi, klo, khi};
    }

    void finish_seeding() {
        seeding_ = false;
        std::map<Int, Int> seeded;
        if (seed_child_) {
            seed_child_->collect(seeded);
            seed_child_.reset();
        }
        // Spread the q seeded keys as evenly as possible over the segment.
        const std::size_t q = seeded.size();
        local_.clear();
        if (q > 0) {
            const std::vector<Int> cells = even_spread_cells(seg_, q);
            std::size_t j = 0;
            for (const auto& [key, cell] : seeded) local_.emplace(key, cells[j++]);
        }
        spread_count_ = Int(q);
        round_ = 1;
        round_loaded_ = 0;
        round_budget_ = ak_budget(k_ - 1, seg_.size(), (spread_count_ + 1));
        check_round_start();
        if (round_budget_ < 1) throw CapacityError("ak: first round budget is empty");
    }

    // s_{R-1} = |seg| / ((q+1) * 2^(R-1)); at every round start all open
    // segments of the owned keys must be at least this large.
    void check_round_start() {
        if (audit_ == nullptr) return;
        ++audit_->rounds_started;
        const Int den = (spread_count_ + 1) * (Int(1) << static_cast<unsigned>(round_ - 1));
        Int prev_cell = seg_.lo;
        bool ok = true;
        for (const auto& [key, cell] : local_) {
            if ((cell - prev_cell + 1) * den < seg_.size()) ok = false;
            prev_cell = cell;
        }
        if ((seg_.hi - prev_cell + 1) * den < seg_.size()) ok = false;
        if (!ok) ++audit_->round_size_violations;
    }

    void route_to_child(const Int& key) {
        auto [plo, phi, klo, khi] = neighbors(key);
        auto it = children_.find(plo);
        if (it == children_.end())
            it = children_
                     .emplace(plo, std::make_unique<AkInstance>(k_ - 1, Segment(plo, phi), klo,
                                                                khi, audit_))
                     .first;
        it->second->insert(key);
    }

    void start_next_round() {
        // Gather old (round-start) and new (this round's) keys, rebalance the
        // excess-1 pieces, and absorb everything back as the next round's old
        // set.
        std::map<Int, Int> fresh;
        for (const auto& [lo, child] : children_) child->collect(fresh);
        children_.clear();

        std::vector<MarkedCell> marks;
        marks.reserve(local_.size() + fresh.size() + 2);
        {
            auto lit = local_.begin();
            auto fit = fresh.begin();
            marks.push_back({seg_.lo, true});
            while (lit != local_.end() || fit != fresh.end()) {
                const bool take_local =
                    fit == fresh.end() || (lit != local_.end() && lit->second < fit->second);
                if (take_local) {
                    marks.push_back({lit->second, true});
                    ++lit;
                } else {
                    marks.push_back({fit->second, false});
                    ++fit;
                }
            }
            marks.push_back({seg_.hi, true});
        }
        const std::vector<Segment> pieces = excess_decompose(marks);

        // Merge all keys, then respace the interior of each piece.
        for (auto& [key, cell] : fresh) local_.emplace(key, cell);
        std::vector<std::pair<Int, Int>> flat(local_.begin(), local_.end());  // key order
        std::map<Int, std::size_t> cell_to_idx;
        for (std::size_t i = 0; i < flat.size(); ++i) cell_to_idx.emplace(flat[i].second, i);
        for (const Segment& piece : pieces) {
            auto first = cell_to_idx.upper_bound(piece.lo);
            auto last = cell_to_idx.lower_bound(piece.hi);
            std::vector<std::size_t> inside;
            for (auto it = first; it != last; ++it) inside.push_back(it->second);
            const std::vector<Int> cells = even_spread_cells(piece, inside.size());
            for (std::size_t j = 0; j < inside.size(); ++j) flat[inside[j]].second = cells[j];
        }
        local_.clear();
        for (auto& [key, cell] : flat) local_.emplace(key, cell);

        ++round_;
        round_loaded_ = 0;
        round_budget_ =
            ak_budget(k_ - 1, seg_.size(), (spread_count_ + 1) * (Int(1) << static_cast<unsigned>(round_ - 1)));
        check_round_start();
        if (round_budget_ < 1) throw CapacityError("ak: round budget is empty");
    }

    int k_;
    Segment seg_;
    Int lo_key_;
    Int hi_key_;
    AkAudit* audit_;

    Int loaded_ = 0;
    Int cap_ = -1;
    std::map<Int, Int> local_;  // key -> cell for keys owned directly

    bool seeding_ = true;
    Int seed_target_ = 0;
    std::unique_ptr<AkInstance> seed_child_;

    Int spread_count_ = 0;
    Int round_ = 0;
    Int round_loaded_ = 0;
    Int round_budget_ = 0;
    std::map<Int, std::unique_ptr<AkInstance>> children_;  // keyed by segment lo
};

}  // namespace detail

// The sparse-regime algorithm: amortized cost 2k-1 per key when the key count
// stays within log2(m)^(k/3). Cells 1 and m act as virtual sentinels bounding
// all keys; they are never emitted and never charged.
class AkAlgorithm : public LabelingAlgorithm {
public:
    AkAlgorithm(int k, const Int& m, const Int& r) : k_(k) {
        if (k < 1) throw UnsupportedRegimeError("ak: k must be >= 1");
        if (m < 3) throw UnsupportedRegimeError("ak: m must be >= 3");
        if (k >= 2) {
            if (m <= pow2(16)) throw UnsupportedRegimeError("ak: k >= 2 needs m > 2^16");
            const double lm = log2_big(m);
            if (static_cast<double>(k) > 0.5 * std::sqrt(lm / std::log2(lm)))
                throw UnsupportedRegimeError("ak: k above 0.5*sqrt(log m / log log m)");
        }
        root_ = std::make_unique<detail::AkInstance>(k, Segment(1, m), Int(0), r + 1, &audit_);
    }

    Configuration initialize(const KeyStorePtr& store, const std::vector<KeyId>& sorted_initial,
                             const Int& /*m*/) override {
        if (!sorted_initial.empty())
            throw UnsupportedRegimeError("ak: expects an initially empty array");
        return Configuration(store);
    }

    Configuration place(const Configuration& current, KeyId id, const Int& key) override {
        root_->insert(key);
        std::map<Int, Int> placed;
        root_->collect(placed);
        Configuration next(current.store());
        std::size_t rank = 0;
        for (auto& [k, cell] : placed) next.insert_at_rank(rank++, current.store()->intern(k), cell);
        return next;
    }

    const AkAudit& audit() const { return audit_; }

private:
    int k_;
    std::unique_ptr<detail::AkInstance> root_;
    AkAudit audit_;
};

}  // namespace oll
