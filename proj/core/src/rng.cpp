#include "ppsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace ppsim {

namespace {

std::mt19937_64 make_engine(SeedSpec spec) {
    // seed_seq's generate() is fully specified by the standard, so the
    // resulting engine state is identical on every platform.
    std::seed_seq seq{
        static_cast<std::uint32_t>(spec.seed & 0xffffffffu),
        static_cast<std::uint32_t>(spec.seed >> 32),
        static_cast<std::uint32_t>(spec.stream & 0xffffffffu),
        static_cast<std::uint32_t>(spec.stream >> 32),
    };
    return std::mt19937_64(seq);
}

} // namespace

Rng::Rng(SeedSpec spec) : engine_(make_engine(spec)) {}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be > 0");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % n;
}

double Rng::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_normal_ = v * f;
    has_cached_normal_ = true;
    return u * f;
}

double Rng::exponential(double rate) {
    if (rate <= 0.0) throw std::invalid_argument("exponential: rate must be > 0");
    return -std::log1p(-uniform01()) / rate;
}

long Rng::poisson(double mean) {
    if (mean < 0.0) throw std::invalid_argument("poisson: mean must be >= 0");
    long total = 0;
    // Poisson(a + b) = Poisson(a) + Poisson(b); exp(-500) is still a normal
    // double, so chunks of 500 keep the product method in range.
    while (mean > 500.0) {
        mean -= 500.0;
        const double threshold = std::exp(-500.0);
        double prod = uniform01();
        while (prod > threshold) {
            prod *= uniform01();
            ++total;
        }
    }
    if (mean > 0.0) {
        const double threshold = std::exp(-mean);
        double prod = uniform01();
        while (prod > threshold) {
            prod *= uniform01();
            ++total;
        }
    }
    return total;
}

} // namespace ppsim
