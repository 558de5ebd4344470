#pragma once

#include <cmath>

namespace ppsim {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double squared_distance(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(Point a, Point b) {
    return std::sqrt(squared_distance(a, b));
}

/// Axis-aligned rectangular observation window.
///
/// Erosion may produce a window with zero or negative extent; such windows
/// are representable so that callers can check degenerate() after eroding.
/// Every operation that needs positive area throws DegenerateWindow.
class Window {
public:
    Window(double xmin, double xmax, double ymin, double ymax)
        : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax) {}

    static Window unit_square() { return Window(0.0, 1.0, 0.0, 1.0); }

    double xmin() const { return xmin_; }
    double xmax() const { return xmax_; }
    double ymin() const { return ymin_; }
    double ymax() const { return ymax_; }

    double width() const { return xmax_ - xmin_; }
    double height() const { return ymax_ - ymin_; }
    double area() const { return degenerate() ? 0.0 : width() * height(); }
    double min_side() const { return width() < height() ? width() : height(); }

    bool degenerate() const { return !(xmax_ > xmin_) || !(ymax_ > ymin_); }

    /// Closed-boundary membership.
    bool contains(Point p) const {
        return p.x >= xmin_ && p.x <= xmax_ && p.y >= ymin_ && p.y <= ymax_;
    }

    /// {u | ball(u, r) inside this window}; may be degenerate, callers check.
    Window eroded(double r) const;

    Window dilated(double r) const;

    /// Distance from an interior point to the nearest window edge.
    double boundary_distance(Point p) const {
        const double dx = std::fmin(p.x - xmin_, xmax_ - p.x);
        const double dy = std::fmin(p.y - ymin_, ymax_ - p.y);
        return std::fmin(dx, dy);
    }

    bool operator==(const Window& o) const {
        return xmin_ == o.xmin_ && xmax_ == o.xmax_ && ymin_ == o.ymin_ && ymax_ == o.ymax_;
    }

private:
    double xmin_, xmax_, ymin_, ymax_;
};

/// Spec-level erosion operation; result may be degenerate (zero/negative
/// extent when 2r >= min side) and must be checked by the caller.
Window erode(const Window& w, double r);

Window dilate(const Window& w, double r);

} // namespace ppsim
