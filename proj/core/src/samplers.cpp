#include "ppsim/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ppsim/count_pmf.hpp"
#include "ppsim/errors.hpp"

namespace ppsim {

namespace {

Point uniform_point(const Window& w, Rng& rng) {
    return Point{rng.uniform(w.xmin(), w.xmax()), rng.uniform(w.ymin(), w.ymax())};
}

void require_usable(const Window& w, const char* who) {
    if (w.degenerate()) throw DegenerateWindow(std::string(who) + ": degenerate window");
}

// Uniform draw on the frame W_ext \ W (four rectangles).
struct Frame {
    Window left, right, bottom, top;
    double a_left, a_right, a_bottom, a_top;

    Frame(const Window& w, const Window& ext)
        : left(ext.xmin(), w.xmin(), ext.ymin(), ext.ymax()),
          right(w.xmax(), ext.xmax(), ext.ymin(), ext.ymax()),
          bottom(w.xmin(), w.xmax(), ext.ymin(), w.ymin()),
          top(w.xmin(), w.xmax(), w.ymax(), ext.ymax()),
          a_left(left.area()), a_right(right.area()),
          a_bottom(bottom.area()), a_top(top.area()) {}

    double area() const { return a_left + a_right + a_bottom + a_top; }

    Point draw(Rng& rng) const {
        const double v = rng.uniform01() * area();
        if (v < a_left) return uniform_point(left, rng);
        if (v < a_left + a_right) return uniform_point(right, rng);
        if (v < a_left + a_right + a_bottom) return uniform_point(bottom, rng);
        return uniform_point(top, rng);
    }
};

// Interaction count of u against a point set, optionally skipping one index.
std::size_t count_within(const std::vector<Point>& pts, Point u, double R,
                         std::size_t skip = static_cast<std::size_t>(-1)) {
    const double r2 = R * R;
    std::size_t c = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i == skip) continue;
        if (squared_distance(pts[i], u) <= r2) ++c;
    }
    return c;
}

// gamma^t with the 0^0 = 1 convention.
double gamma_pow(double gamma, std::size_t t) {
    if (t == 0) return 1.0;
    return std::pow(gamma, static_cast<double>(t));
}

double chain_start_intensity(const StraussParams& p) {
    // Eq-based count approximation doubles as a starting intensity so the
    // chain begins near its equilibrium count.
    double mean = ripley_count_mean(p);
    if (!(mean > 1e-8)) mean = 1e-8;
    return mean;
}

std::size_t interior_close_pairs(const std::vector<Point>& pts, double R) {
    const double r2 = R * R;
    std::size_t s = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (squared_distance(pts[i], pts[j]) <= r2) ++s;
        }
    }
    return s;
}

} // namespace

PointPattern sample_binomial(std::size_t n, const Window& w, Rng& rng) {
    require_usable(w, "sample_binomial");
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.push_back(uniform_point(w, rng));
    return PointPattern(std::move(pts), w);
}

PointPattern sample_binomial(std::size_t n, const Window& w, SeedSpec seed) {
    Rng rng(seed);
    return sample_binomial(n, w, rng);
}

PointPattern sample_poisson(const PoissonParams& p, const Window& w, Rng& rng) {
    p.validate();
    require_usable(w, "sample_poisson");
    const long n = rng.poisson(p.rho * w.area());
    return sample_binomial(static_cast<std::size_t>(n), w, rng);
}

PointPattern sample_poisson(const PoissonParams& p, const Window& w, SeedSpec seed) {
    Rng rng(seed);
    return sample_poisson(p, w, rng);
}

PointPattern sample_lgcp(const GaussFieldSampler& field_sampler, Rng& rng) {
    const GridField field = field_sampler.draw(rng);
    const Window& w = field.window;
    const double cell_area = field.cell_area();
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(field.total_mass() * 1.5) + 8);
    for (std::size_t iy = 0; iy < field.ny; ++iy) {
        for (std::size_t ix = 0; ix < field.nx; ++ix) {
            const long count = rng.poisson(field.values[iy * field.nx + ix] * cell_area);
            const double x0 = w.xmin() + static_cast<double>(ix) * field.cell_width();
            const double y0 = w.ymin() + static_cast<double>(iy) * field.cell_height();
            for (long k = 0; k < count; ++k) {
                pts.push_back(Point{x0 + rng.uniform01() * field.cell_width(),
                                    y0 + rng.uniform01() * field.cell_height()});
            }
        }
    }
    return PointPattern(std::move(pts), w);
}

PointPattern sample_lgcp(const LgcpParams& p, const Window& w, std::size_t nx, std::size_t ny,
                         SeedSpec seed) {
    GaussFieldSampler sampler(p, w, nx, ny);
    Rng rng(seed);
    return sample_lgcp(sampler, rng);
}

PointPattern sample_lgcp_conditional(std::size_t n, const GaussFieldSampler& field_sampler,
                                     Rng& rng, std::size_t max_attempts) {
    if (max_attempts < 1) throw std::invalid_argument("sample_lgcp_conditional: max_attempts >= 1");
    const double log_n_factorial = std::lgamma(static_cast<double>(n) + 1.0);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        const GridField field = field_sampler.draw(rng);
        const double mass = field.total_mass();
        const double log_accept =
            static_cast<double>(n) * std::log(mass) - mass - log_n_factorial;
        const double u = rng.uniform01();
        if (!(std::log(u) <= log_accept)) continue;

        // Accepted field: place n points with density proportional to it.
        const Window& w = field.window;
        std::vector<double> cumulative(field.values.size());
        double acc = 0.0;
        for (std::size_t c = 0; c < field.values.size(); ++c) {
            acc += field.values[c];
            cumulative[c] = acc;
        }
        std::vector<Point> pts;
        pts.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double v = rng.uniform01() * acc;
            const std::size_t c = static_cast<std::size_t>(
                std::lower_bound(cumulative.begin(), cumulative.end(), v) - cumulative.begin());
            const std::size_t ix = c % field.nx;
            const std::size_t iy = c / field.nx;
            const double x0 = w.xmin() + static_cast<double>(ix) * field.cell_width();
            const double y0 = w.ymin() + static_cast<double>(iy) * field.cell_height();
            pts.push_back(Point{x0 + rng.uniform01() * field.cell_width(),
                                y0 + rng.uniform01() * field.cell_height()});
        }
        return PointPattern(std::move(pts), w);
    }
    throw AttemptsExhausted("sample_lgcp_conditional: no field accepted; n is far from the "
                            "model's count distribution");
}

PointPattern sample_lgcp_conditional(std::size_t n, const LgcpParams& p, const Window& w,
                                     std::size_t nx, std::size_t ny, SeedSpec seed,
                                     std::size_t max_attempts) {
    GaussFieldSampler sampler(p, w, nx, ny);
    Rng rng(seed);
    return sample_lgcp_conditional(n, sampler, rng, max_attempts);
}

PointPattern sample_strauss(const StraussParams& p, const Window& w, const ChainConfig& cfg,
                            SeedSpec seed, std::vector<std::size_t>* trace) {
    p.validate();
    require_usable(w, "sample_strauss");
    if (cfg.margin < p.R) {
        throw std::invalid_argument("sample_strauss: chain margin must be >= R");
    }
    Rng rng(seed);
    const Window ext = w.dilated(cfg.margin);
    const double ext_area = ext.area();

    std::vector<Point> state;
    {
        const long n0 = rng.poisson(chain_start_intensity(p) * ext_area);
        state.reserve(static_cast<std::size_t>(n0) + 16);
        for (long i = 0; i < n0; ++i) state.push_back(uniform_point(ext, rng));
    }

    for (std::size_t step = 0; step < cfg.burnin; ++step) {
        if (rng.uniform01() < 0.5) {
            // birth
            const Point u = uniform_point(ext, rng);
            const std::size_t t = count_within(state, u, p.R);
            const double lambda = p.beta * gamma_pow(p.gamma, t);
            const double ratio = lambda * ext_area / (static_cast<double>(state.size()) + 1.0);
            if (rng.uniform01() < ratio) state.push_back(u);
        } else if (!state.empty()) {
            // death
            const std::size_t idx = static_cast<std::size_t>(rng.uniform_index(state.size()));
            const std::size_t t = count_within(state, state[idx], p.R, idx);
            const double lambda = p.beta * gamma_pow(p.gamma, t);
            const double ratio = static_cast<double>(state.size()) / (lambda * ext_area);
            if (rng.uniform01() < ratio) {
                state[idx] = state.back();
                state.pop_back();
            }
        }
        if (trace && cfg.thinning > 0 && step % cfg.thinning == 0) {
            trace->push_back(state.size());
        }
    }

    std::vector<Point> kept;
    for (const Point& pt : state) {
        if (w.contains(pt)) kept.push_back(pt);
    }
    return PointPattern(std::move(kept), w);
}

PointPattern sample_strauss_conditional(std::size_t n, const StraussParams& p, const Window& w,
                                        const ChainConfig& cfg, SeedSpec seed,
                                        std::vector<std::size_t>* trace) {
    p.validate();
    require_usable(w, "sample_strauss_conditional");
    if (cfg.margin < p.R) {
        throw std::invalid_argument("sample_strauss_conditional: chain margin must be >= R");
    }
    Rng rng(seed);
    const Window ext = w.dilated(cfg.margin);
    const Frame frame(w, ext);

    std::vector<Point> interior;
    interior.reserve(n);
    for (std::size_t i = 0; i < n; ++i) interior.push_back(uniform_point(w, rng));

    std::vector<Point> boundary;
    {
        const long b0 = rng.poisson(chain_start_intensity(p) * frame.area());
        boundary.reserve(static_cast<std::size_t>(b0) + 8);
        for (long i = 0; i < b0; ++i) boundary.push_back(frame.draw(rng));
    }

    const double frame_area = frame.area();
    for (std::size_t sweep = 0; sweep < cfg.burnin; ++sweep) {
        // (a) fixed-n single-point moves on w
        for (std::size_t mv = 0; mv < n; ++mv) {
            const std::size_t idx = static_cast<std::size_t>(rng.uniform_index(n));
            const Point proposal = uniform_point(w, rng);
            const long t_new =
                static_cast<long>(count_within(interior, proposal, p.R, idx)) +
                static_cast<long>(count_within(boundary, proposal, p.R));
            const long t_old =
                static_cast<long>(count_within(interior, interior[idx], p.R, idx)) +
                static_cast<long>(count_within(boundary, interior[idx], p.R));
            const long delta_s = t_new - t_old;
            bool accept = delta_s <= 0;
            if (!accept) {
                accept = rng.uniform01() <
                         gamma_pow(p.gamma, static_cast<std::size_t>(delta_s));
            }
            if (accept) interior[idx] = proposal;
        }

        // (b) birth-death updates for the boundary pattern on W_ext \ w,
        // conditioned on the interior points within R of the frame
        for (std::size_t bd = 0; bd < cfg.boundary_steps_per_sweep; ++bd) {
            if (rng.uniform01() < 0.5) {
                const Point u = frame.draw(rng);
                const std::size_t t = count_within(boundary, u, p.R) +
                                      count_within(interior, u, p.R);
                const double lambda = p.beta * gamma_pow(p.gamma, t);
                const double ratio =
                    lambda * frame_area / (static_cast<double>(boundary.size()) + 1.0);
                if (rng.uniform01() < ratio) boundary.push_back(u);
            } else if (!boundary.empty()) {
                const std::size_t idx =
                    static_cast<std::size_t>(rng.uniform_index(boundary.size()));
                const std::size_t t = count_within(boundary, boundary[idx], p.R, idx) +
                                      count_within(interior, boundary[idx], p.R);
                const double lambda = p.beta * gamma_pow(p.gamma, t);
                const double ratio = static_cast<double>(boundary.size()) / (lambda * frame_area);
                if (rng.uniform01() < ratio) {
                    boundary[idx] = boundary.back();
                    boundary.pop_back();
                }
            }
        }

        if (trace && cfg.thinning > 0 && sweep % cfg.thinning == 0) {
            trace->push_back(interior_close_pairs(interior, p.R));
        }
    }
    return PointPattern(std::move(interior), w);
}

} // namespace ppsim
