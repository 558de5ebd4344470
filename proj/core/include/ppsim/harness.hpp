#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppsim/config.hpp"
#include "ppsim/models.hpp"
#include "ppsim/summaries.hpp"

namespace ppsim {

inline constexpr const char* kVersion = "0.1.0";

enum class ModelKind { Poisson, Lgcp, Strauss, Dpp };

std::string to_string(ModelKind m);
ModelKind model_kind_from_string(const std::string& s);

/// Configuration of one envelope study run (one model, fitted or true
/// parameters). Desk-scale defaults: 100 data replications with 499
/// envelope simulations each; the paper-scale run is the same config with
/// n_data = 1000 and n_env = 2500.
struct StudyConfig {
    ModelKind model = ModelKind::Poisson;
    PoissonParams poisson{100.0};
    LgcpParams lgcp{100.0, 1.0, 0.1};
    StraussParams strauss{200.0, 0.3, 0.05};
    DppGaussParams dpp{100.0, 0.03};

    std::size_t n_data = 100;
    std::size_t n_env = 499;
    std::vector<bool> conditional_flags{true, false};
    std::vector<CurveKind> statistics{CurveKind::F, CurveKind::G, CurveKind::J, CurveKind::K};
    bool refit = true;
    double alpha = 0.05;
    std::uint64_t seed = 0;
    std::string out_dir;

    // fit exclusion thresholds: keep delta < exclude_delta_max and
    // kappa >= exclude_kappa_min
    double exclude_delta_max = 0.3;
    double exclude_kappa_min = 0.001;

    // numeric knobs
    std::size_t rgrid_size = 513;
    double rmax = 0.25;
    std::size_t f_resolution = 128;
    std::size_t field_nx = 64, field_ny = 64;
    std::size_t quad_resolution = 256;
    std::size_t lgcp_max_attempts = 100000;
    std::size_t threads = 0; // 0 = hardware concurrency

    void validate() const;
    static StudyConfig from_config(const Config& cfg);
};

struct StudyRow {
    std::size_t rep = 0;
    CurveKind stat = CurveKind::K;
    bool conditional = false;
    bool fitted = false;
    double area = 0.0;
    double p_value = 0.0;
    std::map<std::string, double> fitted_params;
    bool excluded = false;
    std::size_t data_n = 0;
    // count range over the envelope simulations; conditional rows must have
    // sim_n_min == sim_n_max == data_n
    std::size_t sim_n_min = 0;
    std::size_t sim_n_max = 0;
    std::string error;
};

struct StudyResult {
    std::vector<StudyRow> rows;
};

/// Runs the study; if cfg.out_dir is nonempty, also writes rows.csv and
/// manifest.json there. Deterministic per (seed, replication) regardless
/// of thread count.
StudyResult run_study(const StudyConfig& cfg);

void write_rows_csv(const std::string& path, const std::vector<StudyRow>& rows);
void write_manifest_json(const std::string& path, const StudyConfig& cfg);

struct Table1Cell {
    double beta = 0.0;
    double gamma = 0.0;
    double approx_mean = 0.0;
    std::optional<double> sim_mean;
};

struct Table1 {
    std::vector<Table1Cell> cells; // beta-major, gamma ascending
    std::size_t sim_reps = 0;
};

/// Count-mean grid for beta in {50, 200} x gamma in {0, .2, .4, .6, .8, 1}:
/// the closed-form approximation and, optionally, chain-simulated means.
Table1 run_table1(bool simulate, std::size_t reps = 5000, std::uint64_t seed = 0,
                  std::size_t threads = 0);
void write_table1_csv(const std::string& path, const Table1& table);

struct MpleComparisonRow {
    std::size_t rep = 0;
    double gamma_true = 0.0;
    double gamma_unconditional = 0.0;
    double gamma_conditional = 0.0;
    std::string error;
};

struct MpleComparison {
    std::vector<MpleComparisonRow> rows;
    double mean_abs_diff = 0.0;
    double max_abs_diff = 0.0;
    std::size_t failures = 0;
};

/// Strauss pseudo-likelihood comparison: beta = 200, R = 0.05 given, gamma
/// drawn uniformly from [0.01, 1] per replication; reports the mean and max
/// absolute difference between the conditional and unconditional estimates.
MpleComparison run_mple_comparison(std::size_t n_reps, std::uint64_t seed,
                                   std::size_t threads = 0,
                                   std::size_t quad_resolution = 256);
void write_mple_csv(const std::string& path, const MpleComparison& cmp);

} // namespace ppsim
