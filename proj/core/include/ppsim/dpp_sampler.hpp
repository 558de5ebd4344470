#pragma once

#include <cstddef>
#include <vector>

#include "ppsim/dpp.hpp"
#include "ppsim/point_pattern.hpp"
#include "ppsim/rng.hpp"

namespace ppsim {

/// Unconditional DPP sampler: independent Bernoulli(lambda_i) select the
/// active basis functions, then the projection-DPP sequential sampler
/// places the points (rejection from the uniform envelope, valid because
/// every |phi_k| = 1, followed by Gram-Schmidt reduction of the basis).
PointPattern sample_dpp(const DppSpectrum& s, const Window& w, SeedSpec seed);
PointPattern sample_dpp(const DppSpectrum& s, const Window& w, Rng& rng);

/// Positions (0-based, ascending) of the Bernoulli variables equal to 1,
/// conditioned on exactly n successes, for eigenvalues in nonincreasing
/// order: sequential proposals from p(.|l) by inversion sampling with the
/// product recursion, accepted with probability prod_{k>i_n}(1-lambda_k).
/// Truncated products use the retained spectrum only.
std::vector<std::size_t> sample_dpp_count_indices(std::size_t n, const DppSpectrum& s,
                                                  SeedSpec seed,
                                                  std::size_t max_attempts = 100000);
std::vector<std::size_t> sample_dpp_count_indices(std::size_t n, const DppSpectrum& s, Rng& rng,
                                                  std::size_t max_attempts = 100000);

/// Conditional sampler: index chain composed with the projection sampler;
/// always returns exactly n points.
PointPattern sample_dpp_conditional(std::size_t n, const DppSpectrum& s, const Window& w,
                                    SeedSpec seed, std::size_t max_attempts = 100000);
PointPattern sample_dpp_conditional(std::size_t n, const DppSpectrum& s, const Window& w,
                                    Rng& rng, std::size_t max_attempts = 100000);

} // namespace ppsim
