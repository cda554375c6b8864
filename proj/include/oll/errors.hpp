#pragma once

#include <stdexcept>
#include <string>

namespace oll {

// Error taxonomy mirrored by the CLI exit codes (see harness.hpp).
// Precondition violations on pure functions use std::invalid_argument.

// The algorithm produced a storage function that is not strictly order
// preserving (or lost/duplicated keys). The game aborts rather than repairs:
// silent repair would corrupt the cost accounting.
class InvalidPlacementError : public std::runtime_error {
public:
    explicit InvalidPlacementError(const std::string& msg)
        : std::runtime_error("invalid placement: " + msg) {}
};

// The adversary found no suitable gap in any table segment.
class AdversaryStuckError : public std::runtime_error {
public:
    explicit AdversaryStuckError(const std::string& msg)
        : std::runtime_error("adversary stuck: " + msg) {}
};

// An algorithm ran out of room (array full, round budget exhausted, or no
// usable open segment).
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg)
        : std::runtime_error("capacity exceeded: " + msg) {}
};

// Algorithm asked to operate in a regime it does not support (e.g. direct
// storage with r > m).
class UnsupportedRegimeError : public std::runtime_error {
public:
    explicit UnsupportedRegimeError(const std::string& msg)
        : std::runtime_error("unsupported regime: " + msg) {}
};

// Parameter derivation produced d < 2 with no override. Carries the derived
// values so callers can inspect or override them.
class InfeasibleParamsError : public std::runtime_error {
public:
    InfeasibleParamsError(const std::string& msg, int derived_d)
        : std::runtime_error("infeasible parameters: " + msg), derived_d(derived_d) {}
    int derived_d;
};

// Phase schedule computed p < 1.
class ScheduleInfeasibleError : public std::runtime_error {
public:
    ScheduleInfeasibleError(const std::string& msg, long long computed_p)
        : std::runtime_error("schedule infeasible: " + msg), computed_p(computed_p) {}
    long long computed_p;
};

}  // namespace oll
