#include "ppsim/dpp_sampler.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "ppsim/errors.hpp"

namespace ppsim {

namespace {

bool is_unit_square(const Window& w) {
    return std::abs(w.xmin()) < 1e-12 && std::abs(w.xmax() - 1.0) < 1e-12 &&
           std::abs(w.ymin()) < 1e-12 && std::abs(w.ymax() - 1.0) < 1e-12;
}

using Cvec = std::vector<std::complex<double>>;

void basis_at(const std::vector<DppEigen>& eigens, const std::vector<std::size_t>& selected,
              Point u, Cvec& out) {
    out.resize(selected.size());
    for (std::size_t j = 0; j < selected.size(); ++j) {
        const DppEigen& e = eigens[selected[j]];
        const double phase = 2.0 * M_PI * (e.k1 * u.x + e.k2 * u.y);
        out[j] = std::complex<double>(std::cos(phase), std::sin(phase));
    }
}

// Projection-DPP sequential sampler on the selected basis functions.
std::vector<Point> sample_projection(const DppSpectrum& s,
                                     const std::vector<std::size_t>& selected, const Window& w,
                                     Rng& rng) {
    const std::size_t n = selected.size();
    std::vector<Point> pts;
    if (n == 0) return pts;
    pts.reserve(n);

    const auto& eigens = s.eigenvalues();
    std::vector<Cvec> ortho; // orthonormal basis of the conditioned directions
    ortho.reserve(n);
    Cvec v, w_vec;

    const double nd = static_cast<double>(n);
    for (std::size_t placed = 0; placed < n; ++placed) {
        Point chosen{};
        double residual = 0.0;
        while (true) {
            const Point u{rng.uniform(w.xmin(), w.xmax()), rng.uniform(w.ymin(), w.ymax())};
            basis_at(eigens, selected, u, v);
            double projected = 0.0;
            for (const Cvec& e : ortho) {
                std::complex<double> dot(0.0, 0.0);
                for (std::size_t j = 0; j < n; ++j) dot += std::conj(e[j]) * v[j];
                projected += std::norm(dot);
            }
            residual = nd - projected;
            if (residual < 0.0) residual = 0.0;
            if (rng.uniform01() <= residual / nd && residual > 1e-12 * nd) {
                chosen = u;
                break;
            }
        }
        pts.push_back(chosen);
        if (placed + 1 == n) break;

        // Gram-Schmidt: append the unit residual of v against ortho.
        w_vec = v;
        for (const Cvec& e : ortho) {
            std::complex<double> dot(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) dot += std::conj(e[j]) * v[j];
            for (std::size_t j = 0; j < n; ++j) w_vec[j] -= dot * e[j];
        }
        double norm2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) norm2 += std::norm(w_vec[j]);
        const double inv_norm = 1.0 / std::sqrt(norm2);
        for (std::size_t j = 0; j < n; ++j) w_vec[j] *= inv_norm;
        ortho.push_back(w_vec);
    }
    return pts;
}

} // namespace

PointPattern sample_dpp(const DppSpectrum& s, const Window& w, Rng& rng) {
    if (!is_unit_square(w)) {
        throw std::invalid_argument("sample_dpp: spectrum basis requires the unit square");
    }
    std::vector<std::size_t> selected;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (rng.uniform01() < s[i].lambda) selected.push_back(i);
    }
    return PointPattern(sample_projection(s, selected, w, rng), w);
}

PointPattern sample_dpp(const DppSpectrum& s, const Window& w, SeedSpec seed) {
    Rng rng(seed);
    return sample_dpp(s, w, rng);
}

std::vector<std::size_t> sample_dpp_count_indices(std::size_t n, const DppSpectrum& s, Rng& rng,
                                                  std::size_t max_attempts) {
    const std::size_t total = s.size();
    if (n > s.nonzero_count()) {
        throw InfeasibleCount("sample_dpp_count_indices: n exceeds the nonzero eigenvalue count");
    }
    if (n == 0) return {};

    // suffix[l] = prod_{j >= l} (1 - lambda_j), 0-based.
    std::vector<double> suffix(total + 1, 1.0);
    for (std::size_t j = total; j-- > 0;) {
        suffix[j] = suffix[j + 1] * (1.0 - s[j].lambda);
    }

    std::vector<std::size_t> indices(n);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        bool feasible = true;
        std::size_t prev = 0; // 1-based position of the previous success; 0 = none
        for (std::size_t k = 0; k < n; ++k) {
            const double denom = 1.0 - suffix[prev];
            if (!(denom > 0.0)) {
                feasible = false;
                break;
            }
            // Inversion sampling of p(.|prev) via the product recursion.
            const double u = rng.uniform01();
            double p = s[prev].lambda / denom; // p(prev+1 | prev), 1-based
            double cum = p;
            std::size_t pos = prev + 1;
            while (cum < u && pos < total) {
                const double lam_prev = s[pos - 1].lambda;
                const double lam_here = s[pos].lambda;
                if (!(lam_prev > 0.0)) break; // zero tail: pmf exhausted
                p *= lam_here * (1.0 - lam_prev) / lam_prev;
                cum += p;
                ++pos;
            }
            if (!(s[pos - 1].lambda > 0.0)) {
                feasible = false;
                break;
            }
            indices[k] = pos - 1; // store 0-based
            prev = pos;
        }
        if (!feasible) continue;
        if (rng.uniform01() <= suffix[prev]) return indices;
    }
    throw AttemptsExhausted("sample_dpp_count_indices: acceptance step failed too often");
}

std::vector<std::size_t> sample_dpp_count_indices(std::size_t n, const DppSpectrum& s,
                                                  SeedSpec seed, std::size_t max_attempts) {
    Rng rng(seed);
    return sample_dpp_count_indices(n, s, rng, max_attempts);
}

PointPattern sample_dpp_conditional(std::size_t n, const DppSpectrum& s, const Window& w,
                                    Rng& rng, std::size_t max_attempts) {
    if (!is_unit_square(w)) {
        throw std::invalid_argument("sample_dpp_conditional: spectrum basis requires the unit square");
    }
    const std::vector<std::size_t> selected = sample_dpp_count_indices(n, s, rng, max_attempts);
    return PointPattern(sample_projection(s, selected, w, rng), w);
}

PointPattern sample_dpp_conditional(std::size_t n, const DppSpectrum& s, const Window& w,
                                    SeedSpec seed, std::size_t max_attempts) {
    Rng rng(seed);
    return sample_dpp_conditional(n, s, w, rng, max_attempts);
}

} // namespace ppsim
