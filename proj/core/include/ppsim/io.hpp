#pragma once

#include <iosfwd>
#include <string>

#include "ppsim/envelopes.hpp"
#include "ppsim/point_pattern.hpp"
#include "ppsim/summaries.hpp"

namespace ppsim {

/// Pattern CSV: a sidecar comment line `# window xmin xmax ymin ymax`,
/// a `x,y` header, one point per line.
void write_pattern_csv(std::ostream& os, const PointPattern& x);
void write_pattern_csv(const std::string& path, const PointPattern& x);
PointPattern read_pattern_csv(std::istream& is);
PointPattern read_pattern_csv(const std::string& path);

/// Curve CSV: `r,value,defined` (the defined column is optional on read).
void write_curve_csv(std::ostream& os, const Curve& c);
void write_curve_csv(const std::string& path, const Curve& c);
Curve read_curve_csv(std::istream& is, CurveKind kind = CurveKind::K);
Curve read_curve_csv(const std::string& path, CurveKind kind = CurveKind::K);

/// Envelope CSV: `r,lo,hi,obs`.
void write_envelope_csv(std::ostream& os, const Envelope& e, const Curve& data);
void write_envelope_csv(const std::string& path, const Envelope& e, const Curve& data);

} // namespace ppsim
