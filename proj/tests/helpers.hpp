// Shared test drivers: scripted key orders, a worst-case order generator and
// a randomized non-lazy inner algorithm.
#pragma once

#include <utility>
#include <vector>

#include "oll/game.hpp"
#include "oll/interfaces.hpp"
#include "oll/rng.hpp"

namespace helpers {

// Feeds a fixed key sequence.
class FixedOrderAdversary : public oll::Adversary {
public:
    explicit FixedOrderAdversary(std::vector<oll::Int> keys) : keys_(std::move(keys)) {}
    oll::Int choose(std::int64_t t, const oll::Configuration&) override {
        return keys_.at(static_cast<std::size_t>(t - 1));
    }

private:
    std::vector<oll::Int> keys_;
};

// Always splits the most cramped spot: among adjacent occupied cells (plus
// virtual sentinels at cells 1 and m holding keys 0 and r+1), picks the pair
// with the smallest cell distance whose key gap still has room, and loads the
// key midpoint. Drives sparse-regime algorithms into their worst case.
class PressureAdversary : public oll::Adversary {
public:
    PressureAdversary(oll::Int m, oll::Int r) : m_(std::move(m)), r_(std::move(r)) {}

    oll::Int choose(std::int64_t, const oll::Configuration& cfg) override {
        struct Cand {
            oll::Int cell_span;
            oll::Int cell_lo;
            oll::Int key_lo, key_hi;
        };
        std::optional<Cand> best;
        auto consider = [&](const oll::Int& clo, const oll::Int& chi, const oll::Int& klo,
                            const oll::Int& khi) {
            if (khi - klo < 2) return;
            Cand c{chi - clo, clo, klo, khi};
            if (!best || c.cell_span < best->cell_span ||
                (c.cell_span == best->cell_span && c.cell_lo < best->cell_lo))
                best = std::move(c);
        };
        if (cfg.empty()) {
            consider(1, m_, 0, r_ + 1);
        } else {
            consider(1, cfg.cell_at_rank(0), 0, cfg.key_at_rank(0));
            for (std::size_t i = 0; i + 1 < cfg.size(); ++i)
                consider(cfg.cell_at_rank(i), cfg.cell_at_rank(i + 1), cfg.key_at_rank(i),
                         cfg.key_at_rank(i + 1));
            consider(cfg.cell_at_rank(cfg.size() - 1), m_, cfg.key_at_rank(cfg.size() - 1),
                     r_ + 1);
        }
        if (!best) throw oll::AdversaryStuckError("pressure order: no key gap with room");
        return (best->key_lo + best->key_hi) / 2;
    }

private:
    oll::Int m_;
    oll::Int r_;
};

// Non-lazy inner algorithm: stores the key set at a fresh uniformly random
// strictly increasing cell choice every step. Deterministic per (seed, step).
class RandomAlgorithm : public oll::LabelingAlgorithm {
public:
    RandomAlgorithm(std::uint64_t seed, const oll::Int& m)
        : seed_(seed), m_(m.convert_to<std::size_t>()) {}

    oll::Configuration place(const oll::Configuration& current, oll::KeyId id,
                             const oll::Int& key) override {
        oll::CounterRng rng(seed_, oll::rng_stream::kInnerAlgorithm,
                            static_cast<std::uint64_t>(++step_));
        const std::size_t count = current.size() + 1;
        std::vector<std::size_t> cells(m_);
        for (std::size_t i = 0; i < m_; ++i) cells[i] = i + 1;
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t j = i + rng.next_below(m_ - i);
            std::swap(cells[i], cells[j]);
        }
        cells.resize(count);
        std::sort(cells.begin(), cells.end());
        oll::Configuration next = current;
        next.insert_at_rank(next.rank_of(key), id, oll::Int(0));
        for (std::size_t rnk = 0; rnk < count; ++rnk)
            next.set_cell_at_rank(rnk, oll::Int(cells[rnk]));
        return next;
    }

private:
    std::uint64_t seed_;
    std::size_t m_;
    std::int64_t step_ = 0;
};

}  // namespace helpers
