#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppsim/point_pattern.hpp"
#include "ppsim/rgrid.hpp"

namespace ppsim {

enum class CurveKind : std::uint8_t { K, F, G, J };

std::string to_string(CurveKind k);
CurveKind curve_kind_from_string(const std::string& s);

/// A functional summary statistic sampled on an r-grid. `defined[i]` is
/// false where the estimator is not defined (J where F = 1); values there
/// are meaningless.
struct Curve {
    RGrid rgrid;
    std::vector<double> values;
    std::vector<std::uint8_t> defined;
    CurveKind kind = CurveKind::K;

    Curve(RGrid grid, std::vector<double> vals, CurveKind k);
    Curve(RGrid grid, std::vector<double> vals, std::vector<std::uint8_t> mask, CurveKind k);

    std::size_t size() const { return values.size(); }
};

/// Border-corrected estimate of Ripley's K: reference points restricted to
/// the eroded window, 0/0 := 0, intensity plug-in |W|/n.
Curve estimate_K(const PointPattern& x, const RGrid& rgrid);

/// Border-corrected empty space function on a cell-centred evaluation
/// lattice of grid_resolution^2 points.
Curve estimate_F(const PointPattern& x, const RGrid& rgrid, std::size_t grid_resolution = 128);

/// Border-corrected nearest-neighbour distance function, 0/0 := 0.
Curve estimate_G(const PointPattern& x, const RGrid& rgrid);

/// J = (1 - G) / (1 - F); undefined (mask unset) where F = 1.
Curve estimate_J(const PointPattern& x, const RGrid& rgrid, std::size_t grid_resolution = 128);

/// Combines already-computed F and G estimates into the J curve.
Curve j_from_fg(const Curve& f, const Curve& g);

/// The default grid used throughout the study: 513 equally spaced values
/// on [0, 0.25] for the unit square.
RGrid default_rgrid();

} // namespace ppsim
