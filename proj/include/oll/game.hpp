#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "oll/game_core.hpp"
#include "oll/interfaces.hpp"

namespace oll {

struct RunOptions {
    // Retain full relocation detail in the returned traces. Large runs stream
    // through the observer instead and keep only aggregates.
    bool retain_relocations = true;
    std::function<void(const StepTrace&, const Configuration&)> observer;
};

struct GameResult {
    KeyStorePtr store;
    std::vector<StepTrace> traces;
    Configuration final_configuration;
    Int chi;
};

// The n-step loop: the adversary picks a key, the algorithm answers with a
// storage function, costs are charged by diffing. Every emitted configuration
// is validated; an invalid one aborts the game.
inline GameResult run_game(const GameConfig& config, const AdversaryPtr& adversary,
                           const AlgorithmPtr& algorithm, const RunOptions& options = {}) {
    config.validate();
    auto store = std::make_shared<KeyStore>();

    std::vector<Int> y0(config.initial_keys);
    std::sort(y0.begin(), y0.end());
    std::vector<KeyId> y0_ids;
    y0_ids.reserve(y0.size());
    for (const Int& k : y0) y0_ids.push_back(store->intern(k));

    Configuration current = algorithm->initialize(store, y0_ids, config.m);
    current.validate(config.m);
    if (current.size() != y0.size())
        throw InvalidPlacementError("initial placement must store exactly Y0");

    const bool restricted = !y0.empty();
    const Int lo_bound = restricted ? y0.front() : Int(0);
    const Int hi_bound = restricted ? y0.back() : config.r + 1;

    GameResult result;
    result.store = store;
    result.chi = 0;
    const std::int64_t steps = config.n.convert_to<std::int64_t>();
    result.traces.reserve(options.retain_relocations ? static_cast<std::size_t>(steps) : 0);

    for (std::int64_t t = 1; t <= steps; ++t) {
        Int key = adversary->choose(t, current);
        if (key < 1 || key > config.r)
            throw InvalidPlacementError("adversary key outside [1, r]");
        if (restricted && (key <= lo_bound || key >= hi_bound))
            throw InvalidPlacementError("adversary key outside (min Y0, max Y0)");
        if (current.contains_key(key))
            throw InvalidPlacementError("adversary repeated a loaded key");

        const KeyId id = store->intern(key);
        Configuration next = algorithm->place(current, id, key);
        StepTrace trace = apply_placement(current, id, next, config.m, t, result.chi);
        result.chi = trace.chi;
        current = std::move(next);

        adversary->observe(trace, current);
        if (options.observer) options.observer(trace, current);
        if (!options.retain_relocations) {
            trace.relocated.clear();
            trace.relocated.shrink_to_fit();
        }
        result.traces.push_back(std::move(trace));
    }
    adversary->finish(steps);
    result.final_configuration = std::move(current);
    return result;
}

}  // namespace oll
