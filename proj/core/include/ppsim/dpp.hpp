#pragma once

#include <cstddef>
#include <vector>

#include "ppsim/count_pmf.hpp"
#include "ppsim/geometry.hpp"
#include "ppsim/models.hpp"

namespace ppsim {

/// One spectral component: eigenvalue and its 2-d integer Fourier frequency.
struct DppEigen {
    double lambda = 0.0;
    int k1 = 0;
    int k2 = 0;
};

/// Truncated spectral representation of a DPP kernel on the unit square,
/// basis phi_k(u) = exp(2 pi i k.u). Eigenvalues are kept in nonincreasing
/// order together with their frequencies.
class DppSpectrum {
public:
    DppSpectrum(std::vector<DppEigen> eigens, int truncation);

    /// Test/diagnostic constructor from raw eigenvalues (frequencies are
    /// filled with placeholders; only count-level operations make sense).
    static DppSpectrum from_eigenvalues(const std::vector<double>& lambdas);

    std::size_t size() const { return eigens_.size(); }
    const std::vector<DppEigen>& eigenvalues() const { return eigens_; }
    const DppEigen& operator[](std::size_t i) const { return eigens_[i]; }
    int truncation() const { return truncation_; }

    double total_mass() const;
    std::size_t nonzero_count() const;

private:
    std::vector<DppEigen> eigens_;
    int truncation_ = 0;
};

/// Spectral approximation for the Gaussian kernel on the unit square:
/// lambda_k = rho * pi * kappa^2 * exp(-pi^2 kappa^2 ||k||^2). The box
/// |k1|, |k2| <= M is grown until the neglected mass is below eps.
DppSpectrum dpp_spectrum(const DppGaussParams& p, const Window& w, double eps);

/// Same with the default truncation, eps = 1e-6 of the total mass rho*|W|.
DppSpectrum dpp_spectrum(const DppGaussParams& p, const Window& w);

/// Distribution of the point count: exact iterated convolution of
/// independent Bernoulli(lambda_i).
CountPmf dpp_count_distribution(const DppSpectrum& s);

} // namespace ppsim
