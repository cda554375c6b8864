#pragma once

#include <bit>
#include <cmath>

#include "oll/errors.hpp"
#include "oll/interfaces.hpp"

namespace oll {

// Density-threshold packed-memory rebalancer over a conceptual binary tree
// whose leaves are single cells and whose root spans the array padded to a
// power of two. A new key starts at the leaf given by its order neighbors and
// walks up to the lowest ancestor whose post-insertion density is within
// threshold; that ancestor's keys are then spread evenly. Thresholds
// interpolate linearly from tau_leaf = 1 at height 0 down to
// tau_root = (n + n0)/m at the root.
class PmaAlgorithm : public LabelingAlgorithm {
public:
    PmaAlgorithm(const Int& m, const Int& n_total, std::size_t n0) {
        m_ = to_index(m, kMaxDenseSegment, "pma array size");
        if (m_ < 1) throw UnsupportedRegimeError("pma needs m >= 1");
        std::size_t padded = std::bit_ceil(m_);
        height_ = 0;
        while ((std::size_t(1) << height_) < padded) ++height_;
        tau_root_ = (to_double(n_total) + static_cast<double>(n0)) / static_cast<double>(m_);
        if (tau_root_ > 1.0) throw UnsupportedRegimeError("pma needs n + n0 <= m");
    }

    Configuration place(const Configuration& current, KeyId id, const Int& key) override {
        const std::size_t rank = current.rank_of(key);
        // Leaf position: the predecessor's cell, else the successor's, else 1.
        std::size_t pos = 1;
        if (rank > 0)
            pos = current.cell_at_rank(rank - 1).convert_to<std::size_t>();
        else if (current.size() > 0)
            pos = current.cell_at_rank(0).convert_to<std::size_t>();

        for (unsigned h = 0; h <= height_; ++h) {
            const std::size_t width = std::size_t(1) << h;
            const std::size_t lo = ((pos - 1) / width) * width + 1;
            const std::size_t hi = std::min(lo + width - 1, m_);
            const std::size_t real_size = hi - lo + 1;
            auto [first, last] = current.ranks_in_cells(Int(lo), Int(hi));
            const std::size_t count = (last - first) + 1;  // node keys plus the new one
            if (static_cast<double>(count) <=
                threshold(h) * static_cast<double>(real_size) + 1e-12) {
                last_ = {h, lo, real_size, count};
                return redistribute(current, id, key, rank, lo, real_size, first, last);
            }
        }
        throw CapacityError("pma: root density above threshold");
    }

    double threshold(unsigned h) const {
        return 1.0 - (1.0 - tau_root_) * static_cast<double>(h) / static_cast<double>(height_);
    }

    struct Rebalance {
        unsigned height = 0;
        std::size_t lo = 0;
        std::size_t size = 0;
        std::size_t count = 0;
    };
    // Node chosen by the latest insertion walk; its post-redistribution
    // density is within threshold by construction.
    const Rebalance& last_rebalance() const { return last_; }

private:
    Configuration redistribute(const Configuration& current, KeyId id, const Int& key,
                               std::size_t ins_rank, std::size_t lo, std::size_t size,
                               std::size_t first, std::size_t last) const {
        Configuration next = current;
        next.insert_at_rank(ins_rank, id, Int(0));  // placeholder cell, assigned below
        const std::size_t count = (last - first) + 1;
        for (std::size_t j = 0; j < count; ++j)
            next.set_cell_at_rank(first + j, Int(lo + j * size / count));
        return next;
    }

    std::size_t m_ = 0;
    unsigned height_ = 0;
    double tau_root_ = 0.0;
    Rebalance last_;
};

}  // namespace oll
