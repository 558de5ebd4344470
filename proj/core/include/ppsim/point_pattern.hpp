#pragma once

#include <cstddef>
#include <vector>

#include "ppsim/geometry.hpp"

namespace ppsim {

/// A finite planar point pattern together with its observation window.
/// Immutable after construction; every point lies inside the window
/// (closed boundary).
class PointPattern {
public:
    PointPattern(std::vector<Point> points, Window window);

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const std::vector<Point>& points() const { return points_; }
    const Window& window() const { return window_; }
    const Point& operator[](std::size_t i) const { return points_[i]; }

private:
    std::vector<Point> points_;
    Window window_;
};

/// x restricted to b: the points of x falling in b (closed boundary), with
/// window b and the original order preserved.
PointPattern restrict_to(const PointPattern& x, const Window& b);

/// Number of unordered pairs at distance <= R (closed inequality).
std::size_t close_pair_count(const PointPattern& x, double R);

/// Per-point number of other points within distance <= R of u; u need not
/// belong to x.
std::size_t neighbour_count(const std::vector<Point>& pts, Point u, double R);

/// Distance from each point to its nearest other point; empty for n <= 1.
std::vector<double> nn_distances(const PointPattern& x);

} // namespace ppsim
