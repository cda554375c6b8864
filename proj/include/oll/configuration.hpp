#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "oll/errors.hpp"
#include "oll/ints.hpp"
#include "oll/keys.hpp"
#include "oll/segment.hpp"

namespace oll {

// A configuration is a set of keys together with a strictly order-preserving
// storage function into cells [1, m]. Both arrays are kept sorted in tandem:
// ids_ ascending by key value, cells_ strictly increasing (that IS the
// order-preservation invariant, checked by validate()).
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(KeyStorePtr store) : store_(std::move(store)) {}

    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    const KeyStorePtr& store() const { return store_; }

    KeyId id_at_rank(std::size_t rank) const { return ids_[rank]; }
    const Int& key_at_rank(std::size_t rank) const { return store_->value(ids_[rank]); }
    const Int& cell_at_rank(std::size_t rank) const { return cells_[rank]; }
    const std::vector<Int>& cells() const { return cells_; }
    const std::vector<KeyId>& ids() const { return ids_; }

    // Rank the key value would occupy; keys are distinct so this is also the
    // rank of the key itself when present.
    std::size_t rank_of(const Int& key) const {
        return static_cast<std::size_t>(
            std::lower_bound(ids_.begin(), ids_.end(), key,
                             [&](KeyId id, const Int& k) { return store_->value(id) < k; }) -
            ids_.begin());
    }

    bool contains_key(const Int& key) const {
        const std::size_t r = rank_of(key);
        return r < ids_.size() && store_->value(ids_[r]) == key;
    }

    std::optional<Int> cell_of(const Int& key) const {
        const std::size_t r = rank_of(key);
        if (r < ids_.size() && store_->value(ids_[r]) == key) return cells_[r];
        return std::nullopt;
    }

    std::optional<Int> cell_of_id(KeyId id) const {
        for (std::size_t r = 0; r < ids_.size(); ++r)
            if (ids_[r] == id) return cells_[r];
        return std::nullopt;
    }

    // Rank range [first, last) of keys stored in cells [lo, hi]. Cells are
    // sorted, so this is two binary searches.
    std::pair<std::size_t, std::size_t> ranks_in_cells(const Int& lo, const Int& hi) const {
        auto first = std::lower_bound(cells_.begin(), cells_.end(), lo);
        auto last = std::upper_bound(cells_.begin(), cells_.end(), hi);
        return {static_cast<std::size_t>(first - cells_.begin()),
                static_cast<std::size_t>(last - cells_.begin())};
    }

    void set_cell_at_rank(std::size_t rank, Int cell) { cells_[rank] = std::move(cell); }

    void insert_at_rank(std::size_t rank, KeyId id, Int cell) {
        ids_.insert(ids_.begin() + static_cast<std::ptrdiff_t>(rank), id);
        cells_.insert(cells_.begin() + static_cast<std::ptrdiff_t>(rank), std::move(cell));
    }

    // Throws InvalidPlacementError unless cells are strictly increasing and
    // inside [1, m].
    void validate(const Int& m) const {
        for (std::size_t r = 0; r < cells_.size(); ++r) {
            if (cells_[r] < 1 || cells_[r] > m)
                throw InvalidPlacementError("cell " + cells_[r].str() + " outside [1," + m.str() + "]");
            if (r > 0 && cells_[r - 1] >= cells_[r])
                throw InvalidPlacementError("cells not strictly increasing at rank " +
                                            std::to_string(r));
        }
    }

    // True when this configuration stores exactly base's keys plus extra_id.
    bool keys_are(const Configuration& base, KeyId extra_id) const {
        if (ids_.size() != base.ids_.size() + 1) return false;
        std::size_t i = 0, j = 0;
        bool saw_extra = false;
        while (i < ids_.size()) {
            if (!saw_extra && ids_[i] == extra_id) {
                saw_extra = true;
                ++i;
                continue;
            }
            if (j >= base.ids_.size() || ids_[i] != base.ids_[j]) return false;
            ++i;
            ++j;
        }
        return saw_extra && j == base.ids_.size();
    }

private:
    KeyStorePtr store_;
    std::vector<KeyId> ids_;
    std::vector<Int> cells_;
};

}  // namespace oll
