#pragma once

#include <cstdint>
#include <random>

namespace levnet {

/// Seedable random source used by the simulator.
///
/// Engine: std::mt19937_64, seeded through std::seed_seq with the low and
/// high 32-bit halves of the seed. Both are fully specified by the C++
/// standard, and every variate below is derived from raw engine output
/// by hand-written transforms, so sequences do not depend on the standard
/// library vendor.
///
/// Stream splitting: replication r of a study with base seed s uses
/// seed s + r (see stream_seed).
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform01();

    /// Uniform on [low, high).
    double uniform(double low, double high);

    /// Uniform integer on [0, n). n must be > 0.
    std::uint64_t index(std::uint64_t n);

    bool bernoulli(double p) { return uniform01() < p; }

    /// Poisson variate. Knuth multiplication below mean 12, PTRS
    /// (transformed rejection with squeeze, Hormann 1993) above.
    std::uint64_t poisson(double mean);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

inline std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t run_index) {
    return base_seed + run_index;
}

}  // namespace levnet
