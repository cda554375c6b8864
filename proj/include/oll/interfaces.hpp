#pragma once

#include <functional>
#include <memory>

#include "oll/configuration.hpp"
#include "oll/game_core.hpp"

namespace oll {

// A labeling algorithm answers each loaded key with the next storage
// function. initialize places Y0 before step 1 at no cost; the default is an
// even spread.
class LabelingAlgorithm {
public:
    virtual ~LabelingAlgorithm() = default;

    virtual Configuration initialize(const KeyStorePtr& store,
                                     const std::vector<KeyId>& sorted_initial, const Int& m) {
        Configuration cfg(store);
        const Int count(sorted_initial.size());
        for (std::size_t j = 0; j < sorted_initial.size(); ++j) {
            // floor((j+1) * m / (count+1)), clamped to stay strictly increasing
            Int cell = Int(j + 1) * m / (count + 1);
            if (cell < Int(j + 1)) cell = Int(j + 1);
            cfg.insert_at_rank(j, sorted_initial[j], std::move(cell));
        }
        return cfg;
    }

    virtual Configuration place(const Configuration& current, KeyId id, const Int& key) = 0;
};

// An adversary chooses the next key from the current configuration and then
// observes the algorithm's response (needed for busy-region bookkeeping).
class Adversary {
public:
    virtual ~Adversary() = default;
    virtual Int choose(std::int64_t t, const Configuration& current) = 0;
    virtual void observe(const StepTrace& /*trace*/, const Configuration& /*next*/) {}
    virtual void finish(std::int64_t /*last_step*/) {}
};

using AlgorithmPtr = std::shared_ptr<LabelingAlgorithm>;
using AdversaryPtr = std::shared_ptr<Adversary>;

}  // namespace oll
