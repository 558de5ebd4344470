#pragma once

#include "ppsim/geometry.hpp"
#include "ppsim/point_pattern.hpp"

namespace ppsim {

/// Stationary Poisson process (complete spatial randomness).
struct PoissonParams {
    double rho = 100.0; // intensity, points per unit area

    void validate() const;
};

/// Log-Gaussian Cox process with exponential covariance
/// c(d) = sigma2 * exp(-d / delta). The Gaussian field mean
/// mu = log(rho) - sigma2 / 2 is derived, never stored.
struct LgcpParams {
    double rho = 100.0;
    double sigma2 = 1.0;
    double delta = 0.1;

    double mu() const;
    void validate() const;
};

/// Strauss process: density proportional to beta^n(x) * gamma^s(x) with
/// s(x) the number of R-close pairs.
struct StraussParams {
    double beta = 100.0;
    double gamma = 1.0; // in [0, 1]
    double R = 0.05;

    void validate() const;
};

/// Gaussian-kernel determinantal point process,
/// C(u, v) = rho * exp(-||u - v||^2 / kappa^2).
struct DppGaussParams {
    double rho = 100.0;
    double kappa = 0.03;

    /// Largest kappa for which the process exists at this rho.
    double kappa_max() const;
    void validate() const;
};

/// Papangelou conditional intensity of the Strauss process:
/// beta * gamma^t(x, u), t(x, u) = number of points of x within R of u.
/// Depends on x only through x intersected with ball(u, R).
double papangelou_strauss(const PointPattern& x, Point u, const StraussParams& p);

/// Exponential covariance at lag d.
double lgcp_covariance(const LgcpParams& p, double d);

} // namespace ppsim
