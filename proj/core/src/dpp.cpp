#include "ppsim/dpp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ppsim/errors.hpp"

namespace ppsim {

DppSpectrum::DppSpectrum(std::vector<DppEigen> eigens, int truncation)
    : eigens_(std::move(eigens)), truncation_(truncation) {
    double sum = 0.0;
    for (const DppEigen& e : eigens_) {
        if (!(e.lambda >= 0.0) || !(e.lambda <= 1.0 + 1e-12)) {
            throw ExistenceViolated("dpp spectrum: eigenvalue outside [0, 1]");
        }
        sum += e.lambda;
    }
    if (!std::isfinite(sum)) throw std::invalid_argument("dpp spectrum: mass not finite");
    for (std::size_t i = 0; i + 1 < eigens_.size(); ++i) {
        if (eigens_[i].lambda < eigens_[i + 1].lambda) {
            throw std::invalid_argument("dpp spectrum: eigenvalues must be nonincreasing");
        }
    }
}

DppSpectrum DppSpectrum::from_eigenvalues(const std::vector<double>& lambdas) {
    std::vector<DppEigen> eigens;
    eigens.reserve(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        eigens.push_back(DppEigen{lambdas[i], static_cast<int>(i), 0});
    }
    std::stable_sort(eigens.begin(), eigens.end(),
                     [](const DppEigen& a, const DppEigen& b) { return a.lambda > b.lambda; });
    return DppSpectrum(std::move(eigens), 0);
}

double DppSpectrum::total_mass() const {
    double sum = 0.0;
    for (const DppEigen& e : eigens_) sum += e.lambda;
    return sum;
}

std::size_t DppSpectrum::nonzero_count() const {
    std::size_t n = 0;
    for (const DppEigen& e : eigens_) {
        if (e.lambda > 0.0) ++n;
    }
    return n;
}

namespace {

bool is_unit_square(const Window& w) {
    return std::abs(w.xmin()) < 1e-12 && std::abs(w.xmax() - 1.0) < 1e-12 &&
           std::abs(w.ymin()) < 1e-12 && std::abs(w.ymax() - 1.0) < 1e-12;
}

// One-dimensional factor sums for lambda_k = amp * a(k1) * a(k2) with
// a(t) = exp(-c t^2).
double factor_sum(double c, int m) {
    double s = 1.0;
    for (int t = 1; t <= m; ++t) s += 2.0 * std::exp(-c * static_cast<double>(t) * t);
    return s;
}

double factor_sum_full(double c) {
    double s = 1.0;
    for (int t = 1;; ++t) {
        const double a = 2.0 * std::exp(-c * static_cast<double>(t) * t);
        s += a;
        if (a < 1e-300 || a < 1e-18 * s) break;
    }
    return s;
}

} // namespace

DppSpectrum dpp_spectrum(const DppGaussParams& p, const Window& w, double eps) {
    p.validate();
    if (!is_unit_square(w)) {
        throw std::invalid_argument("dpp_spectrum: Fourier basis requires the unit square");
    }
    if (!(eps > 0.0)) throw std::invalid_argument("dpp_spectrum: eps must be positive");

    const double amp = p.rho * M_PI * p.kappa * p.kappa;
    if (amp > 1.0 + 1e-12) throw ExistenceViolated("dpp_spectrum: rho*pi*kappa^2 > 1");
    const double c = M_PI * M_PI * p.kappa * p.kappa;

    const double s_full = factor_sum_full(c);

    int m = 1;
    while (true) {
        const double s_m = factor_sum(c, m);
        const double neglected = amp * (s_full * s_full - s_m * s_m);
        if (neglected < eps) break;
        ++m;
        if (m > 100000) throw std::invalid_argument("dpp_spectrum: truncation did not converge");
    }

    std::vector<DppEigen> eigens;
    eigens.reserve(static_cast<std::size_t>(2 * m + 1) * (2 * m + 1));
    for (int k1 = -m; k1 <= m; ++k1) {
        for (int k2 = -m; k2 <= m; ++k2) {
            const double norm2 = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            double lambda = amp * std::exp(-c * norm2);
            if (lambda > 1.0) lambda = 1.0; // guard the kappa_max equality case
            eigens.push_back(DppEigen{lambda, k1, k2});
        }
    }
    std::stable_sort(eigens.begin(), eigens.end(), [](const DppEigen& a, const DppEigen& b) {
        if (a.lambda != b.lambda) return a.lambda > b.lambda;
        const long na = static_cast<long>(a.k1) * a.k1 + static_cast<long>(a.k2) * a.k2;
        const long nb = static_cast<long>(b.k1) * b.k1 + static_cast<long>(b.k2) * b.k2;
        if (na != nb) return na < nb;
        if (a.k1 != b.k1) return a.k1 < b.k1;
        return a.k2 < b.k2;
    });
    return DppSpectrum(std::move(eigens), m);
}

DppSpectrum dpp_spectrum(const DppGaussParams& p, const Window& w) {
    return dpp_spectrum(p, w, 1e-6 * p.rho * w.area());
}

CountPmf dpp_count_distribution(const DppSpectrum& s) {
    std::vector<double> pmf{1.0};
    for (const DppEigen& e : s.eigenvalues()) {
        const double lambda = e.lambda;
        pmf.push_back(pmf.back() * lambda);
        for (std::size_t j = pmf.size() - 2; j >= 1; --j) {
            pmf[j] = pmf[j] * (1.0 - lambda) + pmf[j - 1] * lambda;
        }
        pmf[0] *= (1.0 - lambda);
    }
    return CountPmf(std::move(pmf));
}

} // namespace ppsim
