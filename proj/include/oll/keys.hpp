#pragma once

#include <deque>
#include <map>
#include <memory>
#include <stdexcept>

#include "oll/ints.hpp"

namespace oll {

// Loaded keys can be thousands of bits wide (mingap(Y0) >= 2^n requires
// n-bit magnitudes), so per-step state shuffles 32-bit ids while the values
// live once in an append-only store. Initial keys are interned first, so
// id < n0 identifies a key of Y0.
using KeyId = std::uint32_t;

class KeyStore {
public:
    KeyId intern(const Int& value) {
        auto it = by_value_.find(value);
        if (it != by_value_.end()) return it->second;
        const KeyId id = static_cast<KeyId>(values_.size());
        values_.push_back(value);
        by_value_.emplace(value, id);
        return id;
    }

    const Int& value(KeyId id) const { return values_.at(id); }
    bool known(const Int& value) const { return by_value_.count(value) != 0; }
    std::size_t size() const { return values_.size(); }

    bool less(KeyId a, KeyId b) const { return values_[a] < values_[b]; }

private:
    std::deque<Int> values_;
    std::map<Int, KeyId> by_value_;
};

using KeyStorePtr = std::shared_ptr<KeyStore>;

}  // namespace oll
