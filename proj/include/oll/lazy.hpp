#pragma once

#include <unordered_map>

#include "oll/interfaces.hpp"

namespace oll {

// Laziness wrapper: runs the inner algorithm on a virtual configuration g and
// emits placements whose busy region is always one segment. Each step it
// finds the smallest segment S around the inner's chosen cell such that the
// keys stored in S under the emitted f^{t-1}, plus the new key, equal the
// keys stored in S under g^t, then realises g^t inside S only; every other
// relocation is deferred. Per-key relocation counts never exceed the inner
// algorithm's.
class LazyWrapAlgorithm : public LabelingAlgorithm {
public:
    explicit LazyWrapAlgorithm(AlgorithmPtr inner) : inner_(std::move(inner)) {}

    Configuration initialize(const KeyStorePtr& store, const std::vector<KeyId>& sorted_initial,
                             const Int& m) override {
        virtual_cfg_ = inner_->initialize(store, sorted_initial, m);
        return virtual_cfg_;
    }

    Configuration place(const Configuration& current, KeyId id, const Int& key) override {
        const Configuration g_prev = virtual_cfg_;
        Configuration g_next = inner_->place(virtual_cfg_, id, key);
        count_moves(g_prev, g_next, key, inner_moves_);

        const std::size_t ins_rank = g_next.rank_of(key);
        Int lo = g_next.cell_at_rank(ins_rank);
        Int hi = lo;

        // Interval closure. Rule 1/2: a key stored in [lo,hi] under only one
        // of f^{t-1}, g^t drags its other cell into the window (cells are
        // monotone in rank on both sides, so only the window endpoints need
        // probing). Rule 3: the splice must stay order consistent, so a
        // rank neighbor of the window whose deferred f-cell sits on the wrong
        // side is pulled in as well.
        for (;;) {
            bool grew = false;
            auto [pf, lf] = current.ranks_in_cells(lo, hi);
            if (pf < lf) {
                // f-ranks map to g-ranks by skipping over the insertion rank
                const std::size_t glo = pf < ins_rank ? pf : pf + 1;
                const std::size_t ghi = (lf - 1) < ins_rank ? (lf - 1) : lf;
                grew |= widen(lo, hi, g_next.cell_at_rank(glo));
                grew |= widen(lo, hi, g_next.cell_at_rank(ghi));
            }
            auto [pg, lg] = g_next.ranks_in_cells(lo, hi);
            for (std::size_t r = pg; r < lg; ++r) {
                if (r == ins_rank) continue;
                const std::size_t fr = r < ins_rank ? r : r - 1;
                grew |= widen(lo, hi, current.cell_at_rank(fr));
                break;  // smallest f-cell in the window; the largest follows
            }
            for (std::size_t r = lg; r-- > pg;) {
                if (r == ins_rank) continue;
                const std::size_t fr = r < ins_rank ? r : r - 1;
                grew |= widen(lo, hi, current.cell_at_rank(fr));
                break;
            }
            if (pg > 0) {
                // pg - 1 < ins_rank (the seed rank is inside the window), so
                // it maps to the same f-rank.
                const Int& c = current.cell_at_rank(pg - 1);
                if (c > hi) grew |= widen(lo, hi, c);
            }
            if (lg < g_next.size()) {
                const Int& c = current.cell_at_rank(lg - 1);  // lg > ins_rank
                if (c < lo) grew |= widen(lo, hi, c);
            }
            if (!grew) break;
        }

        // Emit: g^t inside the window, f^{t-1} elsewhere.
        Configuration next = current;
        next.insert_at_rank(ins_rank, id, g_next.cell_at_rank(ins_rank));
        auto [pg, lg] = g_next.ranks_in_cells(lo, hi);
        for (std::size_t r = pg; r < lg; ++r) next.set_cell_at_rank(r, g_next.cell_at_rank(r));

        count_moves(current, next, key, emitted_moves_);
        virtual_cfg_ = std::move(g_next);
        return next;
    }

    const Configuration& inner_configuration() const { return virtual_cfg_; }
    const std::unordered_map<KeyId, std::int64_t>& inner_moves() const { return inner_moves_; }
    const std::unordered_map<KeyId, std::int64_t>& emitted_moves() const { return emitted_moves_; }

private:
    static bool widen(Int& lo, Int& hi, const Int& cell) {
        if (cell < lo) {
            lo = cell;
            return true;
        }
        if (cell > hi) {
            hi = cell;
            return true;
        }
        return false;
    }

    static void count_moves(const Configuration& prev, const Configuration& next, const Int& key,
                            std::unordered_map<KeyId, std::int64_t>& counts) {
        const std::size_t ins = next.rank_of(key);
        for (std::size_t r = 0; r < next.size(); ++r) {
            if (r == ins) {
                ++counts[next.id_at_rank(r)];
                continue;
            }
            const std::size_t pr = r < ins ? r : r - 1;
            if (prev.cell_at_rank(pr) != next.cell_at_rank(r)) ++counts[next.id_at_rank(r)];
        }
    }

    AlgorithmPtr inner_;
    Configuration virtual_cfg_;
    std::unordered_map<KeyId, std::int64_t> inner_moves_;
    std::unordered_map<KeyId, std::int64_t> emitted_moves_;
};

inline AlgorithmPtr lazy_wrap(AlgorithmPtr inner) {
    return std::make_shared<LazyWrapAlgorithm>(std::move(inner));
}

}  // namespace oll
