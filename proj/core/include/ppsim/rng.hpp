#pragma once

#include <cstdint>
#include <random>

namespace ppsim {

/// Identifies one reproducible random stream. Identical (seed, stream)
/// pairs yield bit-identical draws; distinct streams are independent.
struct SeedSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    SeedSpec with_stream(std::uint64_t s) const { return SeedSpec{seed, s}; }
};

/// Deterministic random stream. All variate conversions are implemented
/// here rather than with std:: distributions, whose algorithms are
/// implementation-defined and would break the bit-identical contract.
class Rng {
public:
    explicit Rng(SeedSpec spec);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Unbiased uniform index in [0, n).
    std::uint64_t uniform_index(std::uint64_t n);

    /// Standard normal via the polar method (second variate cached).
    double normal();

    double exponential(double rate);

    /// Exact Poisson draw; multiplicative method, chunked so that the
    /// running product never underflows for large means.
    long poisson(double mean);

private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

} // namespace ppsim
