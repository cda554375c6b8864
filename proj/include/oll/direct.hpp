#pragma once

#include "oll/errors.hpp"
#include "oll/interfaces.hpp"

namespace oll {

// Stores key y in cell y. Only valid when r <= m; never relocates, so the
// total cost over n keys is exactly n.
class DirectStoreAlgorithm : public LabelingAlgorithm {
public:
    DirectStoreAlgorithm(const Int& m, const Int& r) {
        if (r > m) throw UnsupportedRegimeError("direct storage needs r <= m");
    }

    Configuration initialize(const KeyStorePtr& store, const std::vector<KeyId>& sorted_initial,
                             const Int& /*m*/) override {
        Configuration cfg(store);
        for (std::size_t j = 0; j < sorted_initial.size(); ++j)
            cfg.insert_at_rank(j, sorted_initial[j], store->value(sorted_initial[j]));
        return cfg;
    }

    Configuration place(const Configuration& current, KeyId id, const Int& key) override {
        Configuration next = current;
        next.insert_at_rank(next.rank_of(key), id, key);
        return next;
    }
};

}  // namespace oll
