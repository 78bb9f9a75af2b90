#pragma once

// Portable seeded randomness. std::mt19937_64 has a fully specified output
// sequence; the distributions below are written out by hand because the
// standard library ones are implementation-defined.

#include <cstdint>
#include <random>

#include "hingekit/exterior.hpp"

namespace hingekit {

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Independent stream for sample `index` of a run seeded with `seed`:
    /// the engine is seeded with splitmix64(seed ^ splitmix64(index + 1)).
    static Rng stream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    long integer(long lo, long hi);
    /// Standard normal by Box-Muller.
    double normal();
    Vec normal_vec(int n);
    Vec uniform_vec(int n, double lo, double hi);
    /// k / den with k uniform in [lo*den, hi*den].
    Rational rational(long lo, long hi, long den);

private:
    struct Raw {};
    Rng(std::uint64_t engine_seed, Raw) : engine_(engine_seed) {}
    std::mt19937_64 engine_;
};

} // namespace hingekit
