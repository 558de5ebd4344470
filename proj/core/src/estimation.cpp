#include "ppsim/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "ppsim/errors.hpp"

namespace ppsim {

PoissonParams fit_intensity(const PointPattern& x) {
    if (x.empty()) throw EmptyPattern("fit_intensity: empty pattern");
    return PoissonParams{static_cast<double>(x.size()) / x.window().area()};
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

} // namespace

std::vector<double> theoretical_K_lgcp_grid(const LgcpParams& p, const std::vector<double>& rs) {
    p.validate();
    const auto pair_density = [&p](double t) {
        return t * std::exp(p.sigma2 * std::exp(-t / p.delta));
    };
    std::vector<double> out(rs.size(), 0.0);
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i] < prev) throw std::invalid_argument("theoretical_K_lgcp_grid: rs must ascend");
        acc += integrate(pair_density, prev, rs[i], 1e-12 + 1e-10 * rs[i] * rs[i]);
        out[i] = 2.0 * M_PI * acc;
        prev = rs[i];
    }
    return out;
}

double theoretical_K_lgcp(const LgcpParams& p, double r) {
    if (r < 0.0) throw std::invalid_argument("theoretical_K_lgcp: r must be >= 0");
    return theoretical_K_lgcp_grid(p, {r})[0];
}

double dpp_pair_correlation(const DppGaussParams& p, double r) {
    p.validate();
    const double z = 2.0 * r * r / (p.kappa * p.kappa);
    return -std::expm1(-z);
}

double theoretical_K_dpp(const DppGaussParams& p, double r) {
    if (r < 0.0) throw std::invalid_argument("theoretical_K_dpp: r must be >= 0");
    p.validate();
    const double z = 2.0 * r * r / (p.kappa * p.kappa);
    return M_PI * r * r + (M_PI * p.kappa * p.kappa / 2.0) * std::expm1(-z);
}

namespace {

// Trapezoid weights restricted to [r_min, r_max].
struct ContrastGrid {
    std::vector<double> rs;
    std::vector<double> khat;
    std::vector<double> weights;
};

ContrastGrid make_contrast_grid(const Curve& khat, const ContrastOptions& opts) {
    ContrastGrid g;
    const auto& rs = khat.rgrid.values();
    for (std::size_t j = 0; j < rs.size(); ++j) {
        if (rs[j] < opts.r_min || rs[j] > opts.r_max || !khat.defined[j]) continue;
        g.rs.push_back(rs[j]);
        g.khat.push_back(khat.values[j]);
    }
    if (g.rs.size() < 2) {
        throw std::invalid_argument("fit_minimum_contrast: fewer than 2 grid points in range");
    }
    g.weights.assign(g.rs.size(), 0.0);
    for (std::size_t j = 0; j + 1 < g.rs.size(); ++j) {
        const double h = 0.5 * (g.rs[j + 1] - g.rs[j]);
        g.weights[j] += h;
        g.weights[j + 1] += h;
    }
    return g;
}

double contrast_value(const ContrastGrid& g, const std::vector<double>& ktheta, double q) {
    double total = 0.0;
    for (std::size_t j = 0; j < g.rs.size(); ++j) {
        const double d = std::pow(g.khat[j], q) - std::pow(ktheta[j], q);
        total += g.weights[j] * d * d;
    }
    return total;
}

// Nelder-Mead with projection onto a box; returns (point, value, iterations,
// converged).
struct NmResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

NmResult nelder_mead_box(const std::function<double(const std::vector<double>&)>& f,
                         std::vector<double> start, const std::vector<double>& lo,
                         const std::vector<double>& hi, std::size_t max_iter, double tol) {
    const std::size_t d = start.size();
    const auto project = [&](std::vector<double>& x) {
        for (std::size_t i = 0; i < d; ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
    };
    project(start);

    std::vector<std::vector<double>> simplex(d + 1, start);
    for (std::size_t i = 0; i < d; ++i) {
        double step = 0.1 * (hi[i] - lo[i]);
        if (start[i] + step > hi[i]) step = -step;
        simplex[i + 1][i] += step;
        project(simplex[i + 1]);
    }
    std::vector<double> values(d + 1);
    for (std::size_t i = 0; i <= d; ++i) values[i] = f(simplex[i]);

    NmResult res;
    std::size_t iter = 0;
    for (; iter < max_iter; ++iter) {
        // order
        std::vector<std::size_t> order(d + 1);
        for (std::size_t i = 0; i <= d; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order[0], worst = order[d], second_worst = order[d - 1];

        double spread = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            spread = std::max(spread, std::abs(simplex[worst][i] - simplex[best][i]));
        }
        if (spread < tol && std::abs(values[worst] - values[best]) <
                                tol * (1.0 + std::abs(values[best]))) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < d; ++k) centroid[k] += simplex[i][k];
        }
        for (std::size_t k = 0; k < d; ++k) centroid[k] /= static_cast<double>(d);

        const auto blend = [&](double coef) {
            std::vector<double> x(d);
            for (std::size_t k = 0; k < d; ++k) {
                x[k] = centroid[k] + coef * (simplex[worst][k] - centroid[k]);
            }
            project(x);
            return x;
        };

        std::vector<double> reflected = blend(-1.0);
        const double fr = f(reflected);
        if (fr < values[best]) {
            std::vector<double> expanded = blend(-2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
        } else if (fr < values[second_worst]) {
            simplex[worst] = reflected;
            values[worst] = fr;
        } else {
            std::vector<double> contracted = blend(0.5);
            const double fc = f(contracted);
            if (fc < values[worst]) {
                simplex[worst] = contracted;
                values[worst] = fc;
            } else {
                // shrink toward best
                for (std::size_t i = 0; i <= d; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < d; ++k) {
                        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
                    }
                    project(simplex[i]);
                    values[i] = f(simplex[i]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= d; ++i) {
        if (values[i] < values[best]) best = i;
    }
    res.x = simplex[best];
    res.value = values[best];
    res.iterations = iter;
    return res;
}

bool near_bound(double v, double lo, double hi) {
    const double span = hi - lo;
    return v - lo < 1e-6 * span || hi - v < 1e-6 * span;
}

} // namespace

FitResult fit_minimum_contrast_lgcp_from_curve(const Curve& khat, double rho,
                                               const ContrastOptions& opts) {
    const ContrastGrid grid = make_contrast_grid(khat, opts);
    const auto objective = [&](const std::vector<double>& theta) {
        const LgcpParams p{rho, theta[0], theta[1]};
        return contrast_value(grid, theoretical_K_lgcp_grid(p, grid.rs), opts.q);
    };

    // coarse multistart over the box, then Nelder-Mead from the best cell
    std::vector<double> best_start{opts.sigma2_lo, opts.delta_lo};
    double best_val = std::numeric_limits<double>::infinity();
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const double s2 = opts.sigma2_lo * std::pow(opts.sigma2_hi / opts.sigma2_lo,
                                                        (a + 0.5) / 4.0);
            const double de = opts.delta_lo * std::pow(opts.delta_hi / opts.delta_lo,
                                                       (b + 0.5) / 4.0);
            const double v = objective({s2, de});
            if (v < best_val) {
                best_val = v;
                best_start = {s2, de};
            }
        }
    }

    const NmResult nm = nelder_mead_box(objective, best_start,
                                        {opts.sigma2_lo, opts.delta_lo},
                                        {opts.sigma2_hi, opts.delta_hi},
                                        opts.max_iterations, 1e-9);
    FitResult fit;
    fit.params["rho"] = rho;
    fit.params["sigma2"] = nm.x[0];
    fit.params["delta"] = nm.x[1];
    fit.objective = nm.value;
    fit.converged = nm.converged;
    fit.iterations = nm.iterations;
    fit.bound_hit = near_bound(nm.x[0], opts.sigma2_lo, opts.sigma2_hi) ||
                    near_bound(nm.x[1], opts.delta_lo, opts.delta_hi);
    if (!std::isfinite(nm.value)) throw NoConvergence("fit_minimum_contrast_lgcp: bad objective");
    return fit;
}

FitResult fit_minimum_contrast_lgcp(const PointPattern& x, const RGrid& rgrid,
                                    const ContrastOptions& opts) {
    const double rho = fit_intensity(x).rho;
    return fit_minimum_contrast_lgcp_from_curve(estimate_K(x, rgrid), rho, opts);
}

FitResult fit_minimum_contrast_dpp_from_curve(const Curve& khat, double rho,
                                              const ContrastOptions& opts) {
    const ContrastGrid grid = make_contrast_grid(khat, opts);
    const double kappa_hi = DppGaussParams{rho, 0.01}.kappa_max();
    if (!(opts.kappa_lo < kappa_hi)) {
        throw std::invalid_argument("fit_minimum_contrast_dpp: empty kappa range");
    }
    const auto objective = [&](double kappa) {
        const DppGaussParams p{rho, kappa};
        std::vector<double> ktheta(grid.rs.size());
        for (std::size_t j = 0; j < grid.rs.size(); ++j) {
            ktheta[j] = theoretical_K_dpp(p, grid.rs[j]);
        }
        return contrast_value(grid, ktheta, opts.q);
    };

    // coarse scan, then golden-section refinement around the best cell
    const int scan = 64;
    int best_idx = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int i = 0; i < scan; ++i) {
        const double kappa = opts.kappa_lo + (kappa_hi - opts.kappa_lo) * (i + 0.5) / scan;
        const double v = objective(kappa);
        if (v < best_val) {
            best_val = v;
            best_idx = i;
        }
    }
    double a = opts.kappa_lo + (kappa_hi - opts.kappa_lo) * std::max(0, best_idx - 1) / scan;
    double b = opts.kappa_lo +
               (kappa_hi - opts.kappa_lo) * std::min(scan, best_idx + 2) / scan;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = objective(c), fd = objective(d);
    std::size_t iter = 0;
    while (b - a > 1e-10 && iter < opts.max_iterations) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = objective(d);
        }
        ++iter;
    }
    const double kappa = 0.5 * (a + b);

    FitResult fit;
    fit.params["rho"] = rho;
    fit.params["kappa"] = kappa;
    fit.objective = objective(kappa);
    fit.converged = b - a <= 1e-10;
    fit.iterations = iter;
    fit.bound_hit = near_bound(kappa, opts.kappa_lo, kappa_hi);
    if (!std::isfinite(fit.objective)) throw NoConvergence("fit_minimum_contrast_dpp: bad objective");
    return fit;
}

FitResult fit_minimum_contrast_dpp(const PointPattern& x, const RGrid& rgrid,
                                   const ContrastOptions& opts) {
    const double rho = fit_intensity(x).rho;
    return fit_minimum_contrast_dpp_from_curve(estimate_K(x, rgrid), rho, opts);
}

// ---------------------------------------------------------------------------
// Strauss pseudo-likelihoods
// ---------------------------------------------------------------------------

namespace {

// Quadrature-side data: neighbour-count histograms over the midpoint
// lattice. I(psi) = cell_area * sum_t hist[t] e^{psi t} is all the scalar
// optimizations ever need, so histograms make evaluations O(t_max).
struct PlData {
    double cell_area = 0.0;
    std::vector<double> hist;                  // t(x, u) counts over nodes
    std::vector<std::vector<double>> hist_i;   // t(x \ {x_i}, u) per interior point
    std::vector<double> t_i;                   // neighbour count of each interior point
    double S = 0.0;
    std::size_t m = 0;
};

void hist_bump(std::vector<double>& h, std::size_t t, double v) {
    if (h.size() <= t) h.resize(t + 1, 0.0);
    h[t] += v;
}

// Moments of the node histogram under weight e^{psi t}, scaled relative to
// the smallest occupied count so that psi near the gamma=0 floor cannot
// underflow everything at once.
struct HistMoments {
    double sum0 = 0.0; // sum_t h[t] e^{psi (t - t0)}
    double sum1 = 0.0; // sum_t t h[t] e^{psi (t - t0)}
    double t0 = 0.0;
};

HistMoments hist_moments(const std::vector<double>& h, double psi) {
    HistMoments mom;
    std::size_t t0 = 0;
    while (t0 < h.size() && h[t0] == 0.0) ++t0;
    mom.t0 = static_cast<double>(t0);
    for (std::size_t t = t0; t < h.size(); ++t) {
        if (h[t] == 0.0) continue;
        const double w = h[t] * std::exp(psi * static_cast<double>(t - t0));
        mom.sum0 += w;
        mom.sum1 += w * static_cast<double>(t);
    }
    return mom;
}

// log of cell_area * sum_t h[t] e^{psi t}
double hist_log_integral(const std::vector<double>& h, double psi, double cell_area) {
    const HistMoments mom = hist_moments(h, psi);
    return std::log(cell_area) + psi * mom.t0 + std::log(mom.sum0);
}

PlData build_pl_data(const PointPattern& x, double R, std::size_t quad_resolution,
                     double border_radius, bool conditional_hists) {
    if (!(R > 0.0)) throw std::invalid_argument("mple: R must be positive");
    if (quad_resolution < 2) throw std::invalid_argument("mple: quad_resolution must be >= 2");
    const Window D = x.window().eroded(border_radius);
    if (D.degenerate()) {
        throw DegenerateWindow("mple: eroded estimation domain has no area");
    }

    const auto& pts = x.points();
    PlData data;

    std::vector<std::size_t> interior;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (D.contains(pts[i])) interior.push_back(i);
    }
    data.m = interior.size();

    data.t_i.reserve(interior.size());
    for (std::size_t idx : interior) {
        const double t = static_cast<double>(neighbour_count(pts, pts[idx], R)) - 1.0;
        data.t_i.push_back(t);
        data.S += t;
    }

    const std::size_t res = quad_resolution;
    const double cw = D.width() / static_cast<double>(res);
    const double ch = D.height() / static_cast<double>(res);
    data.cell_area = cw * ch;
    if (conditional_hists) data.hist_i.resize(interior.size());

    const double r2 = R * R;
    std::vector<std::size_t> near; // interior-list positions of points near the node
    for (std::size_t a = 0; a < res; ++a) {
        for (std::size_t b = 0; b < res; ++b) {
            const Point u{D.xmin() + (static_cast<double>(a) + 0.5) * cw,
                          D.ymin() + (static_cast<double>(b) + 0.5) * ch};
            std::size_t t = 0;
            near.clear();
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (squared_distance(pts[i], u) <= r2) ++t;
            }
            hist_bump(data.hist, t, 1.0);
            if (conditional_hists && t > 0) {
                for (std::size_t k = 0; k < interior.size(); ++k) {
                    if (squared_distance(pts[interior[k]], u) <= r2) near.push_back(k);
                }
                for (std::size_t k : near) {
                    hist_bump(data.hist_i[k], t, -1.0);
                    hist_bump(data.hist_i[k], t - 1, 1.0);
                }
            }
        }
    }
    if (conditional_hists) {
        for (auto& h : data.hist_i) {
            if (h.size() < data.hist.size()) h.resize(data.hist.size(), 0.0);
            for (std::size_t t = 0; t < data.hist.size(); ++t) h[t] += data.hist[t];
        }
    }
    return data;
}

double pl_profile(const PlData& d, double psi) {
    const double m = static_cast<double>(d.m);
    return -m + m * (std::log(m) - hist_log_integral(d.hist, psi, d.cell_area)) + psi * d.S;
}

double score_profile(const PlData& d, double psi) {
    const HistMoments mom = hist_moments(d.hist, psi);
    return d.S - static_cast<double>(d.m) * mom.sum1 / mom.sum0;
}

double pl_conditional(const PlData& d, double psi) {
    double value = psi * d.S;
    for (const auto& h : d.hist_i) {
        value -= hist_log_integral(h, psi, d.cell_area);
    }
    return value;
}

double score_conditional(const PlData& d, double psi) {
    double value = d.S;
    for (const auto& h : d.hist_i) {
        const HistMoments mom = hist_moments(h, psi);
        value -= mom.sum1 / mom.sum0;
    }
    return value;
}

constexpr double kPsiFloor = -46.0; // gamma ~ 1e-20

// Maximizes a concave scalar objective with monotone nonincreasing score on
// psi <= 0 by bisection on the score.
struct ScalarFit {
    double psi = 0.0;
    bool bound_hit = false;
    std::size_t iterations = 0;
};

ScalarFit solve_psi(const std::function<double(double)>& score) {
    ScalarFit fit;
    if (score(0.0) >= 0.0) {
        fit.psi = 0.0;
        fit.bound_hit = true; // gamma = 1
        return fit;
    }
    double lo = -1.0;
    while (score(lo) < 0.0) {
        lo *= 2.0;
        ++fit.iterations;
        if (lo <= kPsiFloor) {
            if (score(kPsiFloor) < 0.0) {
                fit.psi = -std::numeric_limits<double>::infinity(); // gamma = 0
                fit.bound_hit = true;
                return fit;
            }
            lo = kPsiFloor;
            break;
        }
    }
    double hi = 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (score(mid) >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++fit.iterations;
    }
    fit.psi = 0.5 * (lo + hi);
    return fit;
}

FitResult finish_fit(const PlData& data, const ScalarFit& sf, bool conditional) {
    FitResult fit;
    const double psi_eval = std::isinf(sf.psi) ? kPsiFloor : sf.psi;
    const double gamma = std::isinf(sf.psi) ? 0.0 : std::exp(sf.psi);
    fit.params["gamma"] = gamma;
    fit.params["R"] = 0.0; // caller fills
    if (!conditional) {
        fit.params["beta"] = std::exp(std::log(static_cast<double>(data.m)) -
                                      hist_log_integral(data.hist, psi_eval, data.cell_area));
        fit.objective = pl_profile(data, psi_eval);
    } else {
        fit.objective = pl_conditional(data, psi_eval);
    }
    fit.converged = true;
    fit.iterations = sf.iterations;
    fit.bound_hit = sf.bound_hit;
    return fit;
}

} // namespace

struct StraussPseudoLikelihood::Impl {
    PlData data;
};

StraussPseudoLikelihood::StraussPseudoLikelihood(const PointPattern& x, double R,
                                                 std::size_t quad_resolution,
                                                 double border_radius)
    : impl_(new Impl) {
    const double border = border_radius < 0.0 ? R : border_radius;
    impl_->data = build_pl_data(x, R, quad_resolution, border, true);
}

StraussPseudoLikelihood::~StraussPseudoLikelihood() = default;
StraussPseudoLikelihood::StraussPseudoLikelihood(StraussPseudoLikelihood&&) noexcept = default;

std::size_t StraussPseudoLikelihood::interior_count() const { return impl_->data.m; }
double StraussPseudoLikelihood::neighbour_sum() const { return impl_->data.S; }

double StraussPseudoLikelihood::beta_hat(double psi) const {
    return std::exp(std::log(static_cast<double>(impl_->data.m)) -
                    hist_log_integral(impl_->data.hist, psi, impl_->data.cell_area));
}

double StraussPseudoLikelihood::profile_pl(double psi) const { return pl_profile(impl_->data, psi); }
double StraussPseudoLikelihood::profile_score(double psi) const {
    return score_profile(impl_->data, psi);
}
double StraussPseudoLikelihood::conditional_pl(double psi) const {
    return pl_conditional(impl_->data, psi);
}
double StraussPseudoLikelihood::conditional_score(double psi) const {
    return score_conditional(impl_->data, psi);
}

FitResult mple_strauss(const PointPattern& x, double R, std::size_t quad_resolution) {
    const PlData data = build_pl_data(x, R, quad_resolution, R, false);
    if (data.m < 1) throw NoInteriorPoints("mple_strauss: no data points in eroded window");
    const ScalarFit sf = solve_psi([&](double psi) { return score_profile(data, psi); });
    FitResult fit = finish_fit(data, sf, false);
    fit.params["R"] = R;
    return fit;
}

FitResult mple_strauss_conditional(const PointPattern& x, double R,
                                   std::size_t quad_resolution) {
    const PlData data = build_pl_data(x, R, quad_resolution, R, true);
    if (data.m < 2) {
        throw NoInteriorPoints("mple_strauss_conditional: need >= 2 points in eroded window");
    }
    const ScalarFit sf = solve_psi([&](double psi) { return score_conditional(data, psi); });
    FitResult fit = finish_fit(data, sf, true);
    fit.params["R"] = R;
    return fit;
}

std::vector<double> default_profile_R_grid() {
    std::vector<double> rs(41);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        rs[i] = 0.03 + 0.001 * static_cast<double>(i);
    }
    return rs;
}

FitResult profile_mple_R(const PointPattern& x, const std::vector<double>& R_grid,
                         std::size_t quad_resolution) {
    if (R_grid.empty()) throw std::invalid_argument("profile_mple_R: empty R grid");
    const double border = *std::max_element(R_grid.begin(), R_grid.end());

    FitResult best;
    bool have_best = false;
    for (double R : R_grid) {
        const PlData data = build_pl_data(x, R, quad_resolution, border, false);
        if (data.m < 1) throw NoInteriorPoints("profile_mple_R: no data points in eroded window");
        const ScalarFit sf = solve_psi([&](double psi) { return score_profile(data, psi); });
        FitResult fit = finish_fit(data, sf, false);
        fit.params["R"] = R;
        if (!have_best || fit.objective > best.objective) {
            best = fit;
            have_best = true;
        }
    }
    return best;
}

} // namespace ppsim
