#include "ppsim/gauss_field.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "ppsim/errors.hpp"

namespace ppsim {

double GridField::total_mass() const {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum * cell_area();
}

struct GaussFieldSampler::Impl {
    Eigen::MatrixXd chol; // lower-triangular factor of the covariance
};

GaussFieldSampler::GaussFieldSampler(const LgcpParams& p, const Window& w, std::size_t nx,
                                     std::size_t ny)
    : impl_(new Impl), window_(w), nx_(nx), ny_(ny), mu_(p.mu()) {
    p.validate();
    if (nx < 2 || ny < 2) {
        throw std::invalid_argument("gauss field: grid resolution must be >= 2 per side");
    }
    if (w.degenerate()) throw DegenerateWindow("gauss field: degenerate window");

    const std::size_t m = nx * ny;
    std::vector<Point> centres(m);
    const double cw = w.width() / static_cast<double>(nx);
    const double ch = w.height() / static_cast<double>(ny);
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            centres[iy * nx + ix] = Point{w.xmin() + (static_cast<double>(ix) + 0.5) * cw,
                                          w.ymin() + (static_cast<double>(iy) + 0.5) * ch};
        }
    }

    Eigen::MatrixXd cov(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            const double c = lgcp_covariance(p, distance(centres[i], centres[j]));
            cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c;
            cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = c;
        }
    }

    for (double jitter = 0.0; jitter <= 1e-6;
         jitter = (jitter == 0.0 ? 1e-10 : jitter * 10.0)) {
        Eigen::MatrixXd work = cov;
        if (jitter > 0.0) {
            work.diagonal().array() += jitter * p.sigma2;
        }
        Eigen::LLT<Eigen::MatrixXd> llt(work);
        if (llt.info() == Eigen::Success) {
            impl_->chol = llt.matrixL();
            return;
        }
    }
    throw CovarianceNotPD("gauss field: covariance factorization failed after jitter escalation");
}

GaussFieldSampler::~GaussFieldSampler() = default;
GaussFieldSampler::GaussFieldSampler(GaussFieldSampler&&) noexcept = default;
GaussFieldSampler& GaussFieldSampler::operator=(GaussFieldSampler&&) noexcept = default;

GridField GaussFieldSampler::draw(Rng& rng) const {
    const std::size_t m = nx_ * ny_;
    Eigen::VectorXd xi(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) xi(static_cast<Eigen::Index>(i)) = rng.normal();
    const Eigen::VectorXd y = impl_->chol.triangularView<Eigen::Lower>() * xi;

    GridField field;
    field.nx = nx_;
    field.ny = ny_;
    field.window = window_;
    field.values.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        field.values[i] = std::exp(mu_ + y(static_cast<Eigen::Index>(i)));
    }
    return field;
}

GridField sample_gauss_field(const LgcpParams& p, const Window& w, std::size_t nx,
                             std::size_t ny, SeedSpec seed) {
    GaussFieldSampler sampler(p, w, nx, ny);
    Rng rng(seed);
    return sampler.draw(rng);
}

} // namespace ppsim
