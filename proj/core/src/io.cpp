#include "ppsim/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "ppsim/errors.hpp"

namespace ppsim {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open for reading: " + path);
    return is;
}

} // namespace

void write_pattern_csv(std::ostream& os, const PointPattern& x) {
    const Window& w = x.window();
    os << std::setprecision(17);
    os << "# window " << w.xmin() << ' ' << w.xmax() << ' ' << w.ymin() << ' ' << w.ymax()
       << '\n';
    os << "x,y\n";
    for (const Point& p : x.points()) {
        os << p.x << ',' << p.y << '\n';
    }
}

void write_pattern_csv(const std::string& path, const PointPattern& x) {
    auto os = open_out(path);
    write_pattern_csv(os, x);
}

PointPattern read_pattern_csv(std::istream& is) {
    std::string line;
    bool have_window = false;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    std::vector<Point> pts;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        if (line.back() == '\r') line.pop_back();
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string tag;
            ss >> tag;
            if (tag == "window") {
                if (!(ss >> xmin >> xmax >> ymin >> ymax)) {
                    throw IoError("pattern csv: malformed window comment");
                }
                have_window = true;
            }
            continue;
        }
        if (line.rfind("x,", 0) == 0 || line.rfind("x ,", 0) == 0) continue; // header
        std::istringstream ss(line);
        double x, y;
        char comma;
        if (!(ss >> x >> comma >> y) || comma != ',') {
            throw IoError("pattern csv: malformed point line: " + line);
        }
        pts.push_back(Point{x, y});
    }
    if (!have_window) throw IoError("pattern csv: missing `# window ...` comment line");
    return PointPattern(std::move(pts), Window(xmin, xmax, ymin, ymax));
}

PointPattern read_pattern_csv(const std::string& path) {
    auto is = open_in(path);
    return read_pattern_csv(is);
}

void write_curve_csv(std::ostream& os, const Curve& c) {
    os << std::setprecision(17);
    os << "r,value,defined\n";
    for (std::size_t j = 0; j < c.size(); ++j) {
        os << c.rgrid[j] << ',' << (c.defined[j] ? c.values[j] : 0.0) << ','
           << (c.defined[j] ? 1 : 0) << '\n';
    }
}

void write_curve_csv(const std::string& path, const Curve& c) {
    auto os = open_out(path);
    write_curve_csv(os, c);
}

Curve read_curve_csv(std::istream& is, CurveKind kind) {
    std::string line;
    std::vector<double> rs, values;
    std::vector<std::uint8_t> mask;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r" || line[0] == '#') continue;
        if (line.back() == '\r') line.pop_back();
        if (line.rfind("r,", 0) == 0) continue; // header
        std::istringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() < 2) throw IoError("curve csv: malformed line: " + line);
        rs.push_back(std::stod(fields[0]));
        values.push_back(std::stod(fields[1]));
        mask.push_back(fields.size() >= 3 ? static_cast<std::uint8_t>(std::stoi(fields[2]) != 0)
                                          : std::uint8_t{1});
    }
    if (rs.empty()) throw IoError("curve csv: no data rows");
    return Curve(RGrid(std::move(rs)), std::move(values), std::move(mask), kind);
}

Curve read_curve_csv(const std::string& path, CurveKind kind) {
    auto is = open_in(path);
    return read_curve_csv(is, kind);
}

void write_envelope_csv(std::ostream& os, const Envelope& e, const Curve& data) {
    if (!(data.rgrid == e.lower.rgrid)) throw MismatchedGrids("write_envelope_csv: grid mismatch");
    os << std::setprecision(17);
    os << "r,lo,hi,obs\n";
    for (std::size_t j = 0; j < data.size(); ++j) {
        if (!e.lower.defined[j]) continue;
        os << data.rgrid[j] << ',' << e.lower.values[j] << ',' << e.upper.values[j] << ','
           << data.values[j] << '\n';
    }
}

void write_envelope_csv(const std::string& path, const Envelope& e, const Curve& data) {
    auto os = open_out(path);
    write_envelope_csv(os, e, data);
}

} // namespace ppsim
