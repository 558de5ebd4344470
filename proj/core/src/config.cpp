#include "ppsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ppsim/errors.hpp"

namespace ppsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string strip_quotes(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\''))) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    char quote = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_string) {
            if (c == quote) in_string = false;
        } else if (c == '"' || c == '\'') {
            in_string = true;
            quote = c;
        } else if (c == '#') {
            return line.substr(0, i);
        }
    }
    return line;
}

std::vector<std::string> parse_value(const std::string& raw) {
    const std::string v = trim(raw);
    if (v.empty()) throw ConfigError("config: empty value");
    if (v.front() == '[') {
        if (v.back() != ']') throw ConfigError("config: unterminated array: " + v);
        std::vector<std::string> items;
        std::string body = v.substr(1, v.size() - 2);
        std::istringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::string t = trim(item);
            if (!t.empty()) items.push_back(strip_quotes(t));
        }
        return items;
    }
    return {strip_quotes(v)};
}

} // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("config line " + std::to_string(lineno) + ": bad section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        }
        cfg.values_[section][key] = parse_value(line.substr(eq + 1));
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse(ss.str());
}

const std::vector<std::string>* Config::find(const std::string& section,
                                             const std::string& key) const {
    const auto sit = values_.find(section);
    if (sit == values_.end()) return nullptr;
    const auto kit = sit->second.find(key);
    if (kit == sit->second.end()) return nullptr;
    return &kit->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

double Config::get_number(const std::string& section, const std::string& key) const {
    const auto* v = find(section, key);
    if (!v || v->size() != 1) {
        throw ConfigError("config: missing number [" + section + "]." + key);
    }
    try {
        std::size_t used = 0;
        const double out = std::stod((*v)[0], &used);
        if (used != (*v)[0].size()) throw std::invalid_argument("trailing characters");
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config: [" + section + "]." + key + " is not a number: " + (*v)[0]);
    }
}

double Config::get_number_or(const std::string& section, const std::string& key,
                             double fallback) const {
    return has(section, key) ? get_number(section, key) : fallback;
}

bool Config::get_bool_or(const std::string& section, const std::string& key,
                         bool fallback) const {
    const auto* v = find(section, key);
    if (!v) return fallback;
    if (v->size() != 1) throw ConfigError("config: [" + section + "]." + key + " is not a bool");
    std::string s = (*v)[0];
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError("config: [" + section + "]." + key + " is not a bool: " + s);
}

std::string Config::get_string_or(const std::string& section, const std::string& key,
                                  std::string fallback) const {
    const auto* v = find(section, key);
    if (!v) return fallback;
    if (v->size() != 1) throw ConfigError("config: [" + section + "]." + key + " is not scalar");
    return (*v)[0];
}

std::vector<std::string> Config::get_list_or(const std::string& section, const std::string& key,
                                             std::vector<std::string> fallback) const {
    const auto* v = find(section, key);
    return v ? *v : fallback;
}

PoissonParams poisson_params_from_config(const Config& cfg) {
    PoissonParams p{cfg.get_number("poisson", "rho")};
    p.validate();
    return p;
}

LgcpParams lgcp_params_from_config(const Config& cfg) {
    LgcpParams p{cfg.get_number("lgcp", "rho"), cfg.get_number("lgcp", "sigma2"),
                 cfg.get_number("lgcp", "delta")};
    p.validate();
    return p;
}

StraussParams strauss_params_from_config(const Config& cfg) {
    StraussParams p{cfg.get_number("strauss", "beta"), cfg.get_number("strauss", "gamma"),
                    cfg.get_number("strauss", "R")};
    p.validate();
    return p;
}

DppGaussParams dpp_params_from_config(const Config& cfg) {
    DppGaussParams p{cfg.get_number("dpp", "rho"), cfg.get_number("dpp", "kappa")};
    p.validate();
    return p;
}

} // namespace ppsim
