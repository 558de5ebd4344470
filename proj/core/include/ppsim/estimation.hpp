#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ppsim/models.hpp"
#include "ppsim/point_pattern.hpp"
#include "ppsim/summaries.hpp"

namespace ppsim {

struct FitResult {
    std::map<std::string, double> params;
    double objective = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    bool bound_hit = false; // optimum sits on a parameter bound
};

/// Natural intensity estimate n(x) / |W|.
PoissonParams fit_intensity(const PointPattern& x);

/// K-function of the LGCP with exponential covariance:
/// K(r) = 2 pi int_0^r t exp(sigma2 exp(-t/delta)) dt (adaptive quadrature).
double theoretical_K_lgcp(const LgcpParams& p, double r);
std::vector<double> theoretical_K_lgcp_grid(const LgcpParams& p, const std::vector<double>& rs);

/// Closed-form K of the Gaussian-kernel DPP:
/// K(r) = pi r^2 - (pi kappa^2 / 2)(1 - exp(-2 r^2 / kappa^2)).
double theoretical_K_dpp(const DppGaussParams& p, double r);

/// Pair correlation g(r) = 1 - exp(-2 r^2 / kappa^2) of the Gaussian DPP.
double dpp_pair_correlation(const DppGaussParams& p, double r);

struct ContrastOptions {
    double r_min = 0.01;
    double r_max = 0.25;
    double q = 0.25;
    // parameter boxes
    double sigma2_lo = 1e-4, sigma2_hi = 10.0;
    double delta_lo = 1e-3, delta_hi = 1.0;
    double kappa_lo = 1e-4; // upper bound is kappa_max(rho)
    std::size_t max_iterations = 2000;
};

/// Minimum contrast for the LGCP shape parameters (sigma2, delta) with rho
/// fixed at the plug-in intensity: minimizes the trapezoid integral of
/// (Khat^q - K_theta^q)^2 over [r_min, r_max].
FitResult fit_minimum_contrast_lgcp(const PointPattern& x, const RGrid& rgrid,
                                    const ContrastOptions& opts = {});
FitResult fit_minimum_contrast_lgcp_from_curve(const Curve& khat, double rho,
                                               const ContrastOptions& opts = {});

/// Minimum contrast for the DPP scale kappa, rho fixed at the plug-in
/// intensity; kappa is searched in [kappa_lo, kappa_max(rho)].
FitResult fit_minimum_contrast_dpp(const PointPattern& x, const RGrid& rgrid,
                                   const ContrastOptions& opts = {});
FitResult fit_minimum_contrast_dpp_from_curve(const Curve& khat, double rho,
                                              const ContrastOptions& opts = {});

/// Pseudo-likelihood machinery for the Strauss process on the estimation
/// domain W eroded by border_radius, with midpoint quadrature on a
/// quad_resolution^2 lattice. psi = log gamma <= 0 throughout. Exposed so
/// that scores can be checked against finite differences and concavity can
/// be asserted directly.
class StraussPseudoLikelihood {
public:
    StraussPseudoLikelihood(const PointPattern& x, double R, std::size_t quad_resolution = 256,
                            double border_radius = -1.0 /* defaults to R */);
    ~StraussPseudoLikelihood();
    StraussPseudoLikelihood(StraussPseudoLikelihood&&) noexcept;

    std::size_t interior_count() const; // m
    double neighbour_sum() const;       // S = sum_i t(x \ {x_i}, x_i)

    double beta_hat(double psi) const;

    double profile_pl(double psi) const;
    double profile_score(double psi) const;

    double conditional_pl(double psi) const;
    double conditional_score(double psi) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    friend FitResult mple_strauss(const PointPattern&, double, std::size_t);
    friend FitResult mple_strauss_conditional(const PointPattern&, double, std::size_t);
};

/// Maximum pseudo-likelihood estimate of (beta, gamma) with R given;
/// boundary solutions gamma in {0, 1} are flagged via bound_hit.
FitResult mple_strauss(const PointPattern& x, double R, std::size_t quad_resolution = 256);

/// Besag's conditional pseudo-likelihood estimate of gamma (beta drops out).
FitResult mple_strauss_conditional(const PointPattern& x, double R,
                                   std::size_t quad_resolution = 256);

/// Profile pseudo-likelihood over an R grid; all fits share the estimation
/// domain W eroded by max(R_grid) so their values are comparable. Ties are
/// broken toward the smallest R.
FitResult profile_mple_R(const PointPattern& x, const std::vector<double>& R_grid,
                         std::size_t quad_resolution = 256);

/// 41 equally spaced interaction radii from 0.03 to 0.07.
std::vector<double> default_profile_R_grid();

} // namespace ppsim
