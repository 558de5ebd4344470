#pragma once

#include <map>
#include <string>
#include <vector>

#include "ppsim/models.hpp"

namespace ppsim {

/// Minimal TOML-style config reader: `[section]` headers, `key = value`
/// lines, `#` comments, scalar numbers/strings/booleans and flat arrays.
class Config {
public:
    static Config parse(const std::string& text);
    static Config parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;

    double get_number(const std::string& section, const std::string& key) const;
    double get_number_or(const std::string& section, const std::string& key, double fallback) const;
    bool get_bool_or(const std::string& section, const std::string& key, bool fallback) const;
    std::string get_string_or(const std::string& section, const std::string& key,
                              std::string fallback) const;
    std::vector<std::string> get_list_or(const std::string& section, const std::string& key,
                                         std::vector<std::string> fallback) const;

private:
    // section -> key -> raw scalar or list
    std::map<std::string, std::map<std::string, std::vector<std::string>>> values_;
    const std::vector<std::string>* find(const std::string& section,
                                         const std::string& key) const;
};

/// Model parameter parsing from config sections [poisson], [lgcp],
/// [strauss], [dpp]; keys match field names exactly.
PoissonParams poisson_params_from_config(const Config& cfg);
LgcpParams lgcp_params_from_config(const Config& cfg);
StraussParams strauss_params_from_config(const Config& cfg);
DppGaussParams dpp_params_from_config(const Config& cfg);

} // namespace ppsim
