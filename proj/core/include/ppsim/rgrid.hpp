#pragma once

#include <cstddef>
#include <vector>

namespace ppsim {

/// Strictly increasing grid of distances r >= 0 shared by all summary curves.
class RGrid {
public:
    explicit RGrid(std::vector<double> values);

    /// count equally spaced values from 0 to rmax inclusive.
    static RGrid regular(double rmax, std::size_t count);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    double max() const { return values_.back(); }

    bool operator==(const RGrid& o) const { return values_ == o.values_; }

private:
    std::vector<double> values_;
};

} // namespace ppsim
