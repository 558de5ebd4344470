#include "ppsim/count_pmf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ppsim/errors.hpp"

namespace ppsim {

CountPmf::CountPmf(std::vector<double> weights) : probs_(std::move(weights)) {
    if (probs_.empty()) throw std::invalid_argument("CountPmf: empty weight vector");
    double total = 0.0;
    for (double w : probs_) {
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw std::invalid_argument("CountPmf: weights must be finite and nonnegative");
        }
        total += w;
    }
    if (!(total > 0.0)) throw std::invalid_argument("CountPmf: total weight must be positive");
    for (double& w : probs_) w /= total;
    double check = 0.0;
    for (double w : probs_) check += w;
    if (std::abs(check - 1.0) > 1e-12) {
        throw std::invalid_argument("CountPmf: normalization failed");
    }
}

double CountPmf::mean() const {
    double m = 0.0;
    for (std::size_t n = 0; n < probs_.size(); ++n) m += static_cast<double>(n) * probs_[n];
    return m;
}

double CountPmf::variance() const {
    const double m = mean();
    double v = 0.0;
    for (std::size_t n = 0; n < probs_.size(); ++n) {
        const double d = static_cast<double>(n) - m;
        v += d * d * probs_[n];
    }
    return v;
}

namespace {

// log of the unnormalized weight at n.
double ripley_log_weight(const StraussParams& p, std::size_t n) {
    const double nd = static_cast<double>(n);
    return nd * std::log(p.beta) - std::lgamma(nd + 1.0) +
           (p.gamma - 1.0) * nd * (nd - 1.0) * M_PI * p.R * p.R / 2.0;
}

} // namespace

CountPmf ripley_count_pmf(const StraussParams& p, std::size_t n_max) {
    p.validate();
    std::vector<double> logw(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) logw[n] = ripley_log_weight(p, n);
    const double logmax = *std::max_element(logw.begin(), logw.end());

    std::vector<double> w(n_max + 1);
    double total = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        w[n] = std::exp(logw[n] - logmax);
        total += w[n];
    }

    // Successive weight ratios beta/(n+1) * exp((gamma-1) n pi R^2) are
    // nonincreasing, so once the ratio q at n_max is below 1 the omitted
    // mass is bounded by w[n_max] * q / (1 - q).
    const double q = p.beta / (static_cast<double>(n_max) + 1.0) *
                     std::exp((p.gamma - 1.0) * static_cast<double>(n_max) * M_PI * p.R * p.R);
    if (!(q < 1.0) || w[n_max] * q / (1.0 - q) >= 1e-12 * total) {
        throw TailTooHeavy("ripley_count_pmf: tail mass above 1e-12 at n_max");
    }
    return CountPmf(std::move(w));
}

double ripley_count_mean(const StraussParams& p) {
    std::size_t n_max = static_cast<std::size_t>(std::max(4.0 * p.beta, 200.0));
    for (int attempt = 0; attempt < 8; ++attempt) {
        try {
            return ripley_count_pmf(p, n_max).mean();
        } catch (const TailTooHeavy&) {
            n_max *= 2;
        }
    }
    throw TailTooHeavy("ripley_count_mean: tail check failed even after extending n_max");
}

} // namespace ppsim
