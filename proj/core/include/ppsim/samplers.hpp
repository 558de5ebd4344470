#pragma once

#include <cstddef>
#include <vector>

#include "ppsim/gauss_field.hpp"
#include "ppsim/geometry.hpp"
#include "ppsim/models.hpp"
#include "ppsim/point_pattern.hpp"
#include "ppsim/rng.hpp"

namespace ppsim {

/// Markov chain settings for the Strauss samplers.
///
/// For the unconditional birth-death chain, burnin counts proposals. For
/// the conditional chain, burnin counts sweeps; one sweep is n single-point
/// move proposals followed by boundary_steps_per_sweep birth-death
/// proposals for the pattern on W_ext \ W.
struct ChainConfig {
    std::size_t burnin = 4000;
    double margin = 0.0; // W_ext extends this far beyond W; must be >= R
    std::size_t thinning = 1;
    std::size_t boundary_steps_per_sweep = 10;

    static ChainConfig strauss_default(double R) {
        return ChainConfig{4000, 2.0 * R, 1, 10};
    }
    static ChainConfig strauss_conditional_default(double R) {
        return ChainConfig{1000, 2.0 * R, 1, 10};
    }
};

/// Exactly n independent uniform points on w: the Poisson process
/// conditioned on its count.
PointPattern sample_binomial(std::size_t n, const Window& w, SeedSpec seed);
PointPattern sample_binomial(std::size_t n, const Window& w, Rng& rng);

PointPattern sample_poisson(const PoissonParams& p, const Window& w, SeedSpec seed);
PointPattern sample_poisson(const PoissonParams& p, const Window& w, Rng& rng);

/// Cox pattern: a fresh field draw, then a Poisson pattern with
/// piecewise-constant intensity given by the field.
PointPattern sample_lgcp(const LgcpParams& p, const Window& w, std::size_t nx, std::size_t ny,
                         SeedSpec seed);
PointPattern sample_lgcp(const GaussFieldSampler& field_sampler, Rng& rng);

/// Acceptance-rejection conditional Cox sampler: fields are redrawn until
/// a uniform variate falls below the Poisson probability of seeing exactly
/// n points given the field's cell-sum mass; then n points are placed with
/// density proportional to the accepted field. Throws AttemptsExhausted.
PointPattern sample_lgcp_conditional(std::size_t n, const LgcpParams& p, const Window& w,
                                     std::size_t nx, std::size_t ny, SeedSpec seed,
                                     std::size_t max_attempts = 100000);
PointPattern sample_lgcp_conditional(std::size_t n, const GaussFieldSampler& field_sampler,
                                     Rng& rng, std::size_t max_attempts = 100000);

/// Birth-death Metropolis-Hastings for the Strauss density
/// beta^n(x) gamma^s(x) on the extended window, returned restricted to w.
/// If trace is non-null the chain's point count is appended every
/// cfg.thinning proposals.
PointPattern sample_strauss(const StraussParams& p, const Window& w, const ChainConfig& cfg,
                            SeedSpec seed, std::vector<std::size_t>* trace = nullptr);

/// Gibbs-within-Metropolis-Hastings sampler conditioned on exactly n
/// points in w: alternates fixed-n single-point moves on w (acceptance
/// min(1, gamma^{delta s})) with birth-death updates of the boundary
/// pattern on W_ext \ w. If trace is non-null the interior close-pair
/// count is appended every cfg.thinning sweeps.
PointPattern sample_strauss_conditional(std::size_t n, const StraussParams& p, const Window& w,
                                        const ChainConfig& cfg, SeedSpec seed,
                                        std::vector<std::size_t>* trace = nullptr);

} // namespace ppsim
