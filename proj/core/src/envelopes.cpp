#include "ppsim/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ppsim/errors.hpp"

namespace ppsim {

CurveSet::CurveSet(const Curve& data, const std::vector<Curve>& simulations)
    : rgrid_(data.rgrid), kind_(data.kind) {
    if (simulations.empty()) throw TooFewCurves("CurveSet: at least one simulation needed");
    curves_.reserve(simulations.size() + 1);
    mask_ = data.defined;
    curves_.push_back(data.values);
    for (const Curve& c : simulations) {
        if (!(c.rgrid == rgrid_)) throw MismatchedGrids("CurveSet: simulation grid differs");
        for (std::size_t j = 0; j < mask_.size(); ++j) mask_[j] &= c.defined[j];
        curves_.push_back(c.values);
    }
}

std::vector<ErlMeasure> erl_measures(const CurveSet& cs) {
    const std::size_t c = cs.curve_count();
    const std::size_t m = cs.grid_size();
    const auto& mask = cs.mask();
    const auto& curves = cs.curves();

    std::vector<ErlMeasure> measures(c);
    for (auto& v : measures) v.reserve(m);

    std::vector<std::size_t> order(c);
    std::vector<std::int32_t> rank_at(c);
    for (std::size_t j = 0; j < m; ++j) {
        if (!mask[j]) continue;
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return curves[a][j] < curves[b][j];
        });
        // rank from below with ties sharing the minimum applicable rank
        std::size_t i = 0;
        while (i < c) {
            std::size_t k = i;
            while (k + 1 < c && curves[order[k + 1]][j] == curves[order[i]][j]) ++k;
            const auto up_rank = static_cast<std::int32_t>(i + 1);
            const auto down_rank = static_cast<std::int32_t>(c - k);
            const std::int32_t two_sided = std::min(up_rank, down_rank);
            for (std::size_t t = i; t <= k; ++t) rank_at[order[t]] = two_sided;
            i = k + 1;
        }
        for (std::size_t ci = 0; ci < c; ++ci) measures[ci].push_back(rank_at[ci]);
    }
    for (auto& v : measures) std::sort(v.begin(), v.end());
    return measures;
}

bool erl_more_extreme(const ErlMeasure& a, const ErlMeasure& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Envelope global_envelope(const CurveSet& cs, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw std::invalid_argument("global_envelope: alpha must lie in (0, 1)");
    }
    const std::size_t c = cs.curve_count();
    const std::size_t k = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(c)));
    if (k < 1) throw TooFewCurves("global_envelope: need floor(alpha*(s+1)) >= 1");

    std::vector<ErlMeasure> measures = erl_measures(cs);

    // Order curves from most extreme, grouping exact ties into classes.
    std::vector<std::size_t> order(c);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return erl_more_extreme(measures[a], measures[b]);
    });

    std::vector<std::uint8_t> discarded(c, 0);
    std::size_t discarded_count = 0;
    std::size_t pos = 0;
    while (pos < c) {
        std::size_t end = pos;
        while (end + 1 < c && measures[order[end + 1]] == measures[order[pos]]) ++end;
        const std::size_t class_size = end - pos + 1;
        if (discarded_count + class_size > k) break;
        for (std::size_t t = pos; t <= end; ++t) discarded[order[t]] = 1;
        discarded_count += class_size;
        pos = end + 1;
    }

    // p-value: share of curves weakly more extreme than the data curve.
    std::size_t weakly_more_extreme = 0;
    for (std::size_t i = 0; i < c; ++i) {
        if (!erl_more_extreme(measures[0], measures[i])) ++weakly_more_extreme;
    }
    const double p_value = static_cast<double>(weakly_more_extreme) / static_cast<double>(c);

    const std::size_t m = cs.grid_size();
    const auto& mask = cs.mask();
    const auto& curves = cs.curves();
    std::vector<double> lo(m, std::numeric_limits<double>::quiet_NaN());
    std::vector<double> hi(m, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t j = 0; j < m; ++j) {
        if (!mask[j]) continue;
        double lo_v = std::numeric_limits<double>::infinity();
        double hi_v = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < c; ++i) {
            if (discarded[i]) continue;
            lo_v = std::min(lo_v, curves[i][j]);
            hi_v = std::max(hi_v, curves[i][j]);
        }
        lo[j] = lo_v;
        hi[j] = hi_v;
    }

    Envelope env{
        Curve(cs.rgrid(), std::move(lo), std::vector<std::uint8_t>(mask), cs.kind()),
        Curve(cs.rgrid(), std::move(hi), std::vector<std::uint8_t>(mask), cs.kind()),
        alpha,
        p_value,
        std::move(measures),
    };
    return env;
}

double envelope_area(const Envelope& e) {
    const auto& rs = e.lower.rgrid.values();
    if (rs.size() < 2) throw std::invalid_argument("envelope_area: need >= 2 grid points");
    double area = 0.0;
    for (std::size_t j = 0; j + 1 < rs.size(); ++j) {
        if (!e.lower.defined[j] || !e.lower.defined[j + 1]) continue;
        const double g0 = e.upper.values[j] - e.lower.values[j];
        const double g1 = e.upper.values[j + 1] - e.lower.values[j + 1];
        area += 0.5 * (g0 + g1) * (rs[j + 1] - rs[j]);
    }
    return area;
}

bool curve_inside(const Envelope& e, const Curve& c) {
    if (!(c.rgrid == e.lower.rgrid)) throw MismatchedGrids("curve_inside: grid mismatch");
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (!e.lower.defined[j] || !c.defined[j]) continue;
        if (c.values[j] < e.lower.values[j] || c.values[j] > e.upper.values[j]) return false;
    }
    return true;
}

} // namespace ppsim
