#pragma once

#include <cstdint>
#include <vector>

#include "ppsim/summaries.hpp"

namespace ppsim {

/// A data curve (index 0) plus s simulated curves on a shared grid. The
/// common defined-mask is the intersection of the curves' masks; rank
/// computations only see grid points where every curve is defined.
class CurveSet {
public:
    CurveSet(const Curve& data, const std::vector<Curve>& simulations);

    std::size_t curve_count() const { return curves_.size(); } // s + 1
    std::size_t grid_size() const { return rgrid_.size(); }
    const RGrid& rgrid() const { return rgrid_; }
    const std::vector<std::vector<double>>& curves() const { return curves_; }
    const std::vector<std::uint8_t>& mask() const { return mask_; }
    CurveKind kind() const { return kind_; }

private:
    RGrid rgrid_;
    std::vector<std::vector<double>> curves_; // [curve][grid point]
    std::vector<std::uint8_t> mask_;
    CurveKind kind_;
};

/// Extreme-rank-length measure of one curve: its pointwise two-sided ranks
/// (ties get the minimum applicable rank) sorted ascending. A curve is more
/// extreme than another iff its measure is lexicographically smaller;
/// identical measures compare equal.
using ErlMeasure = std::vector<std::int32_t>;

std::vector<ErlMeasure> erl_measures(const CurveSet& cs);

/// true if a is strictly more extreme than b.
bool erl_more_extreme(const ErlMeasure& a, const ErlMeasure& b);

/// Global extreme-rank-length envelope at level alpha.
struct Envelope {
    Curve lower;
    Curve upper;
    double alpha = 0.05;
    double p_value = 1.0;
    std::vector<ErlMeasure> measures; // one per curve, data first

    /// Construction invariant: the data curve lies inside [lower, upper]
    /// on the defined mask iff p_value > alpha.
    bool data_inside() const { return p_value > alpha; }
};

/// Builds the envelope: the k = floor(alpha*(s+1)) most extreme curves are
/// discarded (whole tie-classes only, and only when the class still fits
/// within k); the envelope is the pointwise min/max of the rest. p-value =
/// (number of curves weakly more extreme than the data curve) / (s + 1).
Envelope global_envelope(const CurveSet& cs, double alpha);

/// Trapezoidal integral of (upper - lower) over the defined mask.
double envelope_area(const Envelope& e);

/// Geometric containment of a curve in the envelope (inclusive bounds),
/// evaluated on the envelope's defined mask.
bool curve_inside(const Envelope& e, const Curve& c);

} // namespace ppsim
