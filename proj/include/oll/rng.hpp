#pragma once

#include <cstdint>

namespace oll {

// Counter-based deterministic generator. Every randomized component draws
// from a stream keyed by (seed, module id, step); identical seeds give
// byte-identical runs regardless of call interleaving.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t module_id, std::uint64_t step = 0)
        : key_(mix(mix(seed ^ 0x9e3779b97f4a7c15ull) ^ module_id) ^ mix(step)), counter_(0) {}

    std::uint64_t next_u64() { return mix(key_ + 0x9e3779b97f4a7c15ull * ++counter_); }

    // Uniform in [0, bound), bound > 0. Rejection-free modulo is fine here:
    // streams are short and bias at 2^64 scale is irrelevant for tests.
    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

    double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_;
};

// Module ids for stream separation.
namespace rng_stream {
constexpr std::uint64_t kInnerAlgorithm = 1;
constexpr std::uint64_t kHarness = 2;
constexpr std::uint64_t kTests = 99;
}  // namespace rng_stream

}  // namespace oll
