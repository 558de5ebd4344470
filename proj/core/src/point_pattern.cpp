#include "ppsim/point_pattern.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "ppsim/errors.hpp"

namespace ppsim {

PointPattern::PointPattern(std::vector<Point> points, Window window)
    : points_(std::move(points)), window_(window) {
    if (window_.degenerate()) {
        throw DegenerateWindow("point pattern window has zero or negative extent");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!window_.contains(points_[i])) {
            throw std::invalid_argument("point " + std::to_string(i) + " lies outside the window");
        }
    }
}

PointPattern restrict_to(const PointPattern& x, const Window& b) {
    std::vector<Point> kept;
    kept.reserve(x.size());
    for (const Point& p : x.points()) {
        if (b.contains(p)) kept.push_back(p);
    }
    return PointPattern(std::move(kept), b);
}

std::size_t close_pair_count(const PointPattern& x, double R) {
    if (R <= 0.0) throw std::invalid_argument("close_pair_count: R must be > 0");
    const auto& pts = x.points();
    const double r2 = R * R;
    std::size_t count = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (squared_distance(pts[i], pts[j]) <= r2) ++count;
        }
    }
    return count;
}

std::size_t neighbour_count(const std::vector<Point>& pts, Point u, double R) {
    const double r2 = R * R;
    std::size_t count = 0;
    for (const Point& p : pts) {
        if (squared_distance(p, u) <= r2) ++count;
    }
    return count;
}

std::vector<double> nn_distances(const PointPattern& x) {
    const auto& pts = x.points();
    if (pts.size() < 2) return {};
    std::vector<double> out(pts.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double d2 = squared_distance(pts[i], pts[j]);
            if (d2 < out[i]) out[i] = d2;
            if (d2 < out[j]) out[j] = d2;
        }
    }
    for (double& d : out) d = std::sqrt(d);
    return out;
}

} // namespace ppsim
