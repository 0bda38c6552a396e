#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "hardscope/common.hpp"

namespace hardscope {

/// Mixes a base seed with stream identifiers (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

/// Seeded generator with platform-stable draws.
///
/// std::mt19937_64 output is fixed by the standard, but the standard
/// distributions and std::shuffle are not, so every draw used by the library
/// goes through the helpers here: uniform integers by rejection sampling,
/// reals from the top 53 bits, normals by Box-Muller, and Fisher-Yates
/// shuffling from the back of the range.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t uniform_index(std::uint64_t bound);

    /// Uniform real in [0, 1).
    double uniform01();

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double normal(double mean = 0.0, double stddev = 1.0);

    void shuffle(std::span<Index> values);

    /// Draws k distinct values from [0, n) in ascending order.
    IndexList sample_without_replacement(Index n, Index k);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace hardscope
