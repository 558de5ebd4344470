#include "ppsim/models.hpp"

#include <cmath>
#include <stdexcept>

#include "ppsim/errors.hpp"

namespace ppsim {

void PoissonParams::validate() const {
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw std::invalid_argument("poisson: rho must be positive");
    }
}

double LgcpParams::mu() const { return std::log(rho) - sigma2 / 2.0; }

void LgcpParams::validate() const {
    if (!(rho > 0.0) || !(sigma2 > 0.0) || !(delta > 0.0) ||
        !std::isfinite(rho) || !std::isfinite(sigma2) || !std::isfinite(delta)) {
        throw std::invalid_argument("lgcp: rho, sigma2 and delta must be positive");
    }
}

void StraussParams::validate() const {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("strauss: beta must be positive");
    }
    if (!(gamma >= 0.0) || !(gamma <= 1.0)) {
        throw std::invalid_argument("strauss: gamma must lie in [0, 1]");
    }
    if (!(R > 0.0) || !std::isfinite(R)) {
        throw std::invalid_argument("strauss: R must be positive");
    }
}

double DppGaussParams::kappa_max() const { return 1.0 / std::sqrt(rho * M_PI); }

void DppGaussParams::validate() const {
    if (!(rho > 0.0) || !(kappa > 0.0) || !std::isfinite(rho) || !std::isfinite(kappa)) {
        throw std::invalid_argument("dpp: rho and kappa must be positive");
    }
    // Allow a hair of slack so that the most repulsive case kappa_max()
    // survives round-tripping through text formats.
    if (rho * M_PI * kappa * kappa > 1.0 + 1e-12) {
        throw ExistenceViolated("dpp: kappa exceeds 1/sqrt(rho*pi)");
    }
}

double papangelou_strauss(const PointPattern& x, Point u, const StraussParams& p) {
    p.validate();
    const std::size_t t = neighbour_count(x.points(), u, p.R);
    if (t == 0) return p.beta; // covers gamma == 0 with no neighbours
    return p.beta * std::pow(p.gamma, static_cast<double>(t));
}

double lgcp_covariance(const LgcpParams& p, double d) {
    if (d < 0.0) throw std::invalid_argument("lgcp_covariance: d must be >= 0");
    return p.sigma2 * std::exp(-d / p.delta);
}

} // namespace ppsim
