#include "ppsim/geometry.hpp"

#include <stdexcept>

namespace ppsim {

Window Window::eroded(double r) const {
    if (r < 0.0) throw std::invalid_argument("erosion radius must be >= 0");
    if (r == 0.0) return *this;
    return Window(xmin_ + r, xmax_ - r, ymin_ + r, ymax_ - r);
}

Window Window::dilated(double r) const {
    if (r < 0.0) throw std::invalid_argument("dilation radius must be >= 0");
    return Window(xmin_ - r, xmax_ + r, ymin_ - r, ymax_ + r);
}

Window erode(const Window& w, double r) { return w.eroded(r); }

Window dilate(const Window& w, double r) { return w.dilated(r); }

} // namespace ppsim
