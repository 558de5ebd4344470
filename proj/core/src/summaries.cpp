#include "ppsim/summaries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ppsim/errors.hpp"

namespace ppsim {

RGrid::RGrid(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("RGrid: empty grid");
    if (values_.front() < 0.0) throw std::invalid_argument("RGrid: values must be >= 0");
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
        if (!(values_[i] < values_[i + 1])) {
            throw std::invalid_argument("RGrid: values must be strictly increasing");
        }
    }
}

RGrid RGrid::regular(double rmax, std::size_t count) {
    if (count < 2 || !(rmax > 0.0)) throw std::invalid_argument("RGrid::regular: bad arguments");
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        v[i] = rmax * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return RGrid(std::move(v));
}

RGrid default_rgrid() { return RGrid::regular(0.25, 513); }

std::string to_string(CurveKind k) {
    switch (k) {
        case CurveKind::K: return "K";
        case CurveKind::F: return "F";
        case CurveKind::G: return "G";
        case CurveKind::J: return "J";
    }
    return "?";
}

CurveKind curve_kind_from_string(const std::string& s) {
    if (s == "K") return CurveKind::K;
    if (s == "F") return CurveKind::F;
    if (s == "G") return CurveKind::G;
    if (s == "J") return CurveKind::J;
    throw std::invalid_argument("unknown curve kind: " + s);
}

Curve::Curve(RGrid grid, std::vector<double> vals, CurveKind k)
    : rgrid(std::move(grid)), values(std::move(vals)),
      defined(values.size(), std::uint8_t{1}), kind(k) {
    if (rgrid.size() != values.size()) throw MismatchedGrids("Curve: grid/value length mismatch");
}

Curve::Curve(RGrid grid, std::vector<double> vals, std::vector<std::uint8_t> mask, CurveKind k)
    : rgrid(std::move(grid)), values(std::move(vals)), defined(std::move(mask)), kind(k) {
    if (rgrid.size() != values.size() || rgrid.size() != defined.size()) {
        throw MismatchedGrids("Curve: grid/value/mask length mismatch");
    }
}

namespace {

// Bucket grid for nearest-point queries from arbitrary locations.
class NearestIndex {
public:
    NearestIndex(const std::vector<Point>& pts, const Window& w) : w_(w) {
        const std::size_t n = pts.size();
        k_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(n))));
        cw_ = w.width() / static_cast<double>(k_);
        ch_ = w.height() / static_cast<double>(k_);
        buckets_.resize(k_ * k_);
        for (const Point& p : pts) buckets_[cell_of(p)].push_back(p);
    }

    double nearest_distance(Point u) const {
        const long a0 = clamp_idx((u.x - w_.xmin()) / cw_);
        const long b0 = clamp_idx((u.y - w_.ymin()) / ch_);
        const double min_cell = std::fmin(cw_, ch_);
        double best2 = std::numeric_limits<double>::infinity();
        const long kmax = static_cast<long>(k_);
        for (long ring = 0; ring < 2 * kmax; ++ring) {
            if (ring > 0) {
                const double reach = static_cast<double>(ring - 1) * min_cell;
                if (reach * reach > best2) break;
            }
            for (long a = a0 - ring; a <= a0 + ring; ++a) {
                if (a < 0 || a >= kmax) continue;
                for (long b = b0 - ring; b <= b0 + ring; ++b) {
                    if (b < 0 || b >= kmax) continue;
                    if (std::max(std::labs(a - a0), std::labs(b - b0)) != ring) continue;
                    for (const Point& p : buckets_[static_cast<std::size_t>(b) * k_ +
                                                   static_cast<std::size_t>(a)]) {
                        const double d2 = squared_distance(p, u);
                        if (d2 < best2) best2 = d2;
                    }
                }
            }
        }
        return std::sqrt(best2);
    }

private:
    std::size_t cell_of(Point p) const {
        const long a = clamp_idx((p.x - w_.xmin()) / cw_);
        const long b = clamp_idx((p.y - w_.ymin()) / ch_);
        return static_cast<std::size_t>(b) * k_ + static_cast<std::size_t>(a);
    }

    long clamp_idx(double v) const {
        long i = static_cast<long>(std::floor(v));
        if (i < 0) i = 0;
        if (i >= static_cast<long>(k_)) i = static_cast<long>(k_) - 1;
        return i;
    }

    Window w_;
    std::size_t k_ = 1;
    double cw_ = 1.0, ch_ = 1.0;
    std::vector<std::vector<Point>> buckets_;
};

void check_k_range(const PointPattern& x, const RGrid& rgrid) {
    if (!(rgrid.max() < x.window().min_side() / 2.0)) {
        throw std::invalid_argument("estimate_K: rgrid max must be below half the shortest side");
    }
}

// Distance/boundary pairs -> border-corrected ratio curve. Point u counts
// toward the numerator at r when event_dist <= r, and belongs to the
// reference set while boundary_dist >= r.
std::vector<double> border_ratio_curve(const std::vector<double>& event_dist,
                                       const std::vector<double>& boundary_dist,
                                       const RGrid& rgrid) {
    const std::size_t m = rgrid.size();
    const auto& rs = rgrid.values();
    std::vector<long> num_delta(m + 1, 0), den_delta(m + 1, 0);
    for (std::size_t i = 0; i < event_dist.size(); ++i) {
        const auto hi_it = std::upper_bound(rs.begin(), rs.end(), boundary_dist[i]);
        const std::size_t hi = static_cast<std::size_t>(hi_it - rs.begin()); // first r > b
        if (hi == 0) continue;                                               // outside even at r=0
        den_delta[0] += 1;
        den_delta[hi] -= 1;
        const auto lo_it = std::lower_bound(rs.begin(), rs.end(), event_dist[i]);
        const std::size_t lo = static_cast<std::size_t>(lo_it - rs.begin()); // first r >= d
        if (lo < hi) {
            num_delta[lo] += 1;
            num_delta[hi] -= 1;
        }
    }
    std::vector<double> out(m, 0.0);
    long num = 0, den = 0;
    for (std::size_t j = 0; j < m; ++j) {
        num += num_delta[j];
        den += den_delta[j];
        out[j] = den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
    }
    return out;
}

} // namespace

Curve estimate_K(const PointPattern& x, const RGrid& rgrid) {
    if (x.empty()) throw EmptyPattern("estimate_K: empty pattern");
    check_k_range(x, rgrid);
    const auto& pts = x.points();
    const std::size_t n = pts.size();
    const Window& w = x.window();

    std::vector<double> bdist(n);
    std::vector<std::vector<double>> neigh(n);
    for (std::size_t i = 0; i < n; ++i) {
        bdist[i] = w.boundary_distance(pts[i]);
        neigh[i].reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) neigh[i].push_back(distance(pts[i], pts[j]));
        }
        std::sort(neigh[i].begin(), neigh[i].end());
    }

    const double area_over_n = w.area() / static_cast<double>(n);
    std::vector<double> values(rgrid.size(), 0.0);
    for (std::size_t j = 0; j < rgrid.size(); ++j) {
        const double r = rgrid[j];
        long interior = 0;
        long total_neighbours = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (bdist[i] < r) continue;
            ++interior;
            total_neighbours += std::upper_bound(neigh[i].begin(), neigh[i].end(), r) -
                                neigh[i].begin();
        }
        values[j] = interior > 0
                        ? area_over_n * static_cast<double>(total_neighbours) /
                              static_cast<double>(interior)
                        : 0.0;
    }
    return Curve(rgrid, std::move(values), CurveKind::K);
}

Curve estimate_G(const PointPattern& x, const RGrid& rgrid) {
    if (x.empty()) throw EmptyPattern("estimate_G: empty pattern");
    const auto& pts = x.points();
    const Window& w = x.window();

    std::vector<double> nnd = nn_distances(x);
    if (nnd.empty()) nnd.assign(pts.size(), std::numeric_limits<double>::infinity());
    std::vector<double> bdist(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) bdist[i] = w.boundary_distance(pts[i]);

    return Curve(rgrid, border_ratio_curve(nnd, bdist, rgrid), CurveKind::G);
}

Curve estimate_F(const PointPattern& x, const RGrid& rgrid, std::size_t grid_resolution) {
    if (grid_resolution < 32) {
        throw std::invalid_argument("estimate_F: grid_resolution must be >= 32");
    }
    const Window& w = x.window();
    const std::size_t res = grid_resolution;
    const double cw = w.width() / static_cast<double>(res);
    const double ch = w.height() / static_cast<double>(res);

    std::vector<double> event_dist;
    std::vector<double> boundary_dist;
    event_dist.reserve(res * res);
    boundary_dist.reserve(res * res);

    if (x.empty()) {
        for (std::size_t a = 0; a < res; ++a) {
            for (std::size_t b = 0; b < res; ++b) {
                const Point u{w.xmin() + (static_cast<double>(a) + 0.5) * cw,
                              w.ymin() + (static_cast<double>(b) + 0.5) * ch};
                event_dist.push_back(std::numeric_limits<double>::infinity());
                boundary_dist.push_back(w.boundary_distance(u));
            }
        }
    } else {
        const NearestIndex index(x.points(), w);
        for (std::size_t a = 0; a < res; ++a) {
            for (std::size_t b = 0; b < res; ++b) {
                const Point u{w.xmin() + (static_cast<double>(a) + 0.5) * cw,
                              w.ymin() + (static_cast<double>(b) + 0.5) * ch};
                event_dist.push_back(index.nearest_distance(u));
                boundary_dist.push_back(w.boundary_distance(u));
            }
        }
    }
    return Curve(rgrid, border_ratio_curve(event_dist, boundary_dist, rgrid), CurveKind::F);
}

Curve j_from_fg(const Curve& f, const Curve& g) {
    if (!(f.rgrid == g.rgrid)) throw MismatchedGrids("j_from_fg: F and G grids differ");
    const RGrid& rgrid = f.rgrid;
    std::vector<double> values(rgrid.size(), 0.0);
    std::vector<std::uint8_t> mask(rgrid.size(), std::uint8_t{1});
    for (std::size_t j = 0; j < rgrid.size(); ++j) {
        if (f.values[j] >= 1.0) {
            mask[j] = 0;
            values[j] = std::numeric_limits<double>::quiet_NaN();
        } else {
            values[j] = (1.0 - g.values[j]) / (1.0 - f.values[j]);
        }
    }
    return Curve(rgrid, std::move(values), std::move(mask), CurveKind::J);
}

Curve estimate_J(const PointPattern& x, const RGrid& rgrid, std::size_t grid_resolution) {
    return j_from_fg(estimate_F(x, rgrid, grid_resolution), estimate_G(x, rgrid));
}

} // namespace ppsim
