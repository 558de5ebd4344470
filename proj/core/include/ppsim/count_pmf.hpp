#pragma once

#include <cstddef>
#include <vector>

#include "ppsim/models.hpp"

namespace ppsim {

/// Probability mass function of a point count, indexed n = 0..n_max.
class CountPmf {
public:
    /// Normalizes the weights; throws std::invalid_argument if they are not
    /// nonnegative with positive sum, or if normalization misses 1 by more
    /// than 1e-12 after the division (which cannot happen for finite input).
    explicit CountPmf(std::vector<double> weights);

    std::size_t n_max() const { return probs_.size() - 1; }
    double operator[](std::size_t n) const { return probs_[n]; }
    const std::vector<double>& probabilities() const { return probs_; }

    double mean() const;
    double variance() const;

private:
    std::vector<double> probs_;
};

/// Count-distribution approximation for a Strauss process on the unit
/// square: p(n) proportional to (beta^n / n!) * exp((gamma-1) n (n-1) pi R^2 / 2).
/// Throws TailTooHeavy unless the monotone tail bound at n_max is below
/// 1e-12 of the total mass.
CountPmf ripley_count_pmf(const StraussParams& p, std::size_t n_max);

/// Mean of ripley_count_pmf with n_max chosen automatically
/// (max(4*beta, 200), extended if the tail check demands it).
double ripley_count_mean(const StraussParams& p);

} // namespace ppsim
