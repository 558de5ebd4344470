#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "ppsim/geometry.hpp"
#include "ppsim/models.hpp"
#include "ppsim/rng.hpp"

namespace ppsim {

/// Piecewise-constant intensity surface on an nx-by-ny cell grid over a
/// window. Values are intensities per cell (already exponentiated).
struct GridField {
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<double> values; // row-major, index = iy * nx + ix
    Window window = Window::unit_square();

    double cell_width() const { return window.width() / static_cast<double>(nx); }
    double cell_height() const { return window.height() / static_cast<double>(ny); }
    double cell_area() const { return cell_width() * cell_height(); }

    Point cell_centre(std::size_t ix, std::size_t iy) const {
        return Point{window.xmin() + (static_cast<double>(ix) + 0.5) * cell_width(),
                     window.ymin() + (static_cast<double>(iy) + 0.5) * cell_height()};
    }

    /// Integral of the intensity over the window (cell-sum approximation).
    double total_mass() const;
};

/// Samples the exponentiated Gaussian random field of an LGCP at the cell
/// centres: Y has mean log(rho) - sigma2/2 and covariance
/// sigma2 * exp(-d/delta); the field is Z = exp(Y).
///
/// The dense covariance factorization is done once at construction
/// (diagonal jitter escalates 1e-10..1e-6 before failing with
/// CovarianceNotPD), so drawing many fields is cheap. draw() is const and
/// safe to call concurrently with distinct Rng instances.
class GaussFieldSampler {
public:
    GaussFieldSampler(const LgcpParams& p, const Window& w, std::size_t nx, std::size_t ny);
    ~GaussFieldSampler();
    GaussFieldSampler(GaussFieldSampler&&) noexcept;
    GaussFieldSampler& operator=(GaussFieldSampler&&) noexcept;

    GridField draw(Rng& rng) const;

    const Window& window() const { return window_; }
    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    Window window_;
    std::size_t nx_ = 0, ny_ = 0;
    double mu_ = 0.0;
};

/// One-shot convenience wrapper around GaussFieldSampler.
GridField sample_gauss_field(const LgcpParams& p, const Window& w, std::size_t nx,
                             std::size_t ny, SeedSpec seed);

} // namespace ppsim
