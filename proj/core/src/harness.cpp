#include "ppsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ppsim/count_pmf.hpp"
#include "ppsim/dpp.hpp"
#include "ppsim/dpp_sampler.hpp"
#include "ppsim/envelopes.hpp"
#include "ppsim/errors.hpp"
#include "ppsim/estimation.hpp"
#include "ppsim/gauss_field.hpp"
#include "ppsim/samplers.hpp"

namespace ppsim {

namespace {

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<std::size_t>(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t stream_id(std::size_t rep, std::size_t block, std::size_t j) {
    return (static_cast<std::uint64_t>(rep) << 20) |
           (static_cast<std::uint64_t>(block) << 16) | static_cast<std::uint64_t>(j);
}

} // namespace

std::string to_string(ModelKind m) {
    switch (m) {
        case ModelKind::Poisson: return "poisson";
        case ModelKind::Lgcp: return "lgcp";
        case ModelKind::Strauss: return "strauss";
        case ModelKind::Dpp: return "dpp";
    }
    return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "poisson") return ModelKind::Poisson;
    if (s == "lgcp") return ModelKind::Lgcp;
    if (s == "strauss") return ModelKind::Strauss;
    if (s == "dpp") return ModelKind::Dpp;
    throw ConfigError("unknown model: " + s);
}

void StudyConfig::validate() const {
    if (n_data < 1) throw ConfigError("study: n_data must be >= 1");
    if (n_env < 39) throw ConfigError("study: n_env must be >= 39 for a 5% test");
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw ConfigError("study: alpha must lie in (0,1)");
    if (statistics.empty()) throw ConfigError("study: statistics set is empty");
    if (conditional_flags.empty()) throw ConfigError("study: conditional flag set is empty");
    if (n_env >= (1u << 16)) throw ConfigError("study: n_env must be < 65536");
    switch (model) {
        case ModelKind::Poisson: poisson.validate(); break;
        case ModelKind::Lgcp: lgcp.validate(); break;
        case ModelKind::Strauss: strauss.validate(); break;
        case ModelKind::Dpp: dpp.validate(); break;
    }
}

StudyConfig StudyConfig::from_config(const Config& cfg) {
    StudyConfig sc;
    sc.model = model_kind_from_string(cfg.get_string_or("study", "model", "poisson"));
    switch (sc.model) {
        case ModelKind::Poisson: sc.poisson = poisson_params_from_config(cfg); break;
        case ModelKind::Lgcp: sc.lgcp = lgcp_params_from_config(cfg); break;
        case ModelKind::Strauss: sc.strauss = strauss_params_from_config(cfg); break;
        case ModelKind::Dpp: sc.dpp = dpp_params_from_config(cfg); break;
    }
    sc.n_data = static_cast<std::size_t>(cfg.get_number_or("study", "n_data", 100));
    sc.n_env = static_cast<std::size_t>(cfg.get_number_or("study", "n_env", 499));
    sc.refit = cfg.get_bool_or("study", "refit", true);
    sc.alpha = cfg.get_number_or("study", "alpha", 0.05);
    sc.seed = static_cast<std::uint64_t>(cfg.get_number_or("study", "seed", 0));

    const auto flags = cfg.get_list_or("study", "conditional", {"true", "false"});
    sc.conditional_flags.clear();
    for (const std::string& f : flags) {
        sc.conditional_flags.push_back(f == "true" || f == "1" || f == "yes");
    }
    const auto stats = cfg.get_list_or("study", "statistics", {"F", "G", "J", "K"});
    sc.statistics.clear();
    for (const std::string& s : stats) sc.statistics.push_back(curve_kind_from_string(s));

    sc.exclude_delta_max = cfg.get_number_or("study", "exclude_delta_max", 0.3);
    sc.exclude_kappa_min = cfg.get_number_or("study", "exclude_kappa_min", 0.001);
    sc.rgrid_size = static_cast<std::size_t>(cfg.get_number_or("study", "rgrid_size", 513));
    sc.rmax = cfg.get_number_or("study", "rmax", 0.25);
    sc.f_resolution = static_cast<std::size_t>(cfg.get_number_or("study", "f_resolution", 128));
    sc.field_nx = static_cast<std::size_t>(cfg.get_number_or("study", "field_nx", 64));
    sc.field_ny = static_cast<std::size_t>(cfg.get_number_or("study", "field_ny", 64));
    sc.quad_resolution =
        static_cast<std::size_t>(cfg.get_number_or("study", "quad_resolution", 256));
    sc.lgcp_max_attempts =
        static_cast<std::size_t>(cfg.get_number_or("study", "lgcp_max_attempts", 100000));
    sc.threads = static_cast<std::size_t>(cfg.get_number_or("study", "threads", 0));
    sc.validate();
    return sc;
}

namespace {

// One parameter set ready to simulate from; heavy precomputations (field
// factorization, spectrum) are built once and shared across draws.
class SimContext {
public:
    SimContext(ModelKind kind, const StudyConfig& cfg, const PoissonParams& pois,
               const LgcpParams& lgcp, const StraussParams& strauss, const DppGaussParams& dpp)
        : kind_(kind), cfg_(&cfg), poisson_(pois), lgcp_(lgcp), strauss_(strauss), dpp_(dpp) {
        const Window w = Window::unit_square();
        if (kind_ == ModelKind::Lgcp) {
            field_ = std::make_shared<GaussFieldSampler>(lgcp_, w, cfg.field_nx, cfg.field_ny);
        } else if (kind_ == ModelKind::Dpp) {
            spectrum_ = std::make_shared<DppSpectrum>(dpp_spectrum(dpp_, w));
        }
    }

    PointPattern sample_unconditional(Rng& rng) const {
        const Window w = Window::unit_square();
        switch (kind_) {
            case ModelKind::Poisson: return sample_poisson(poisson_, w, rng);
            case ModelKind::Lgcp: return sample_lgcp(*field_, rng);
            case ModelKind::Strauss: {
                // chain samplers own their stream internally
                const SeedSpec sub{rng.next_u64(), rng.next_u64()};
                return sample_strauss(strauss_, w, ChainConfig::strauss_default(strauss_.R), sub);
            }
            case ModelKind::Dpp: return sample_dpp(*spectrum_, w, rng);
        }
        throw std::logic_error("unreachable");
    }

    PointPattern sample_conditional(std::size_t n, Rng& rng) const {
        const Window w = Window::unit_square();
        switch (kind_) {
            case ModelKind::Poisson: return sample_binomial(n, w, rng);
            case ModelKind::Lgcp:
                return sample_lgcp_conditional(n, *field_, rng, cfg_->lgcp_max_attempts);
            case ModelKind::Strauss: {
                const SeedSpec sub{rng.next_u64(), rng.next_u64()};
                return sample_strauss_conditional(
                    n, strauss_, w, ChainConfig::strauss_conditional_default(strauss_.R), sub);
            }
            case ModelKind::Dpp:
                return sample_dpp_conditional(n, *spectrum_, w, rng, cfg_->lgcp_max_attempts);
        }
        throw std::logic_error("unreachable");
    }

private:
    ModelKind kind_;
    const StudyConfig* cfg_;
    PoissonParams poisson_;
    LgcpParams lgcp_;
    StraussParams strauss_;
    DppGaussParams dpp_;
    std::shared_ptr<const GaussFieldSampler> field_;
    std::shared_ptr<const DppSpectrum> spectrum_;
};

struct FittedModel {
    std::map<std::string, double> params;
    bool excluded = false;
    PoissonParams poisson{100.0};
    LgcpParams lgcp{100.0, 1.0, 0.1};
    StraussParams strauss{200.0, 0.3, 0.05};
    DppGaussParams dpp{100.0, 0.03};
};

FittedModel fit_model(const StudyConfig& cfg, const PointPattern& data) {
    FittedModel out;
    switch (cfg.model) {
        case ModelKind::Poisson: {
            out.poisson = fit_intensity(data);
            out.params["rho"] = out.poisson.rho;
            break;
        }
        case ModelKind::Lgcp: {
            const RGrid grid = RGrid::regular(cfg.rmax, cfg.rgrid_size);
            const FitResult fit = fit_minimum_contrast_lgcp(data, grid);
            out.lgcp = LgcpParams{fit.params.at("rho"), fit.params.at("sigma2"),
                                  fit.params.at("delta")};
            out.params = fit.params;
            out.excluded = !(out.lgcp.delta < cfg.exclude_delta_max);
            break;
        }
        case ModelKind::Strauss: {
            const FitResult fit =
                profile_mple_R(data, default_profile_R_grid(), cfg.quad_resolution);
            out.strauss = StraussParams{fit.params.at("beta"), fit.params.at("gamma"),
                                        fit.params.at("R")};
            out.params = fit.params;
            break;
        }
        case ModelKind::Dpp: {
            const RGrid grid = RGrid::regular(cfg.rmax, cfg.rgrid_size);
            const FitResult fit = fit_minimum_contrast_dpp(data, grid);
            out.dpp = DppGaussParams{fit.params.at("rho"), fit.params.at("kappa")};
            out.params = fit.params;
            out.excluded = out.dpp.kappa < cfg.exclude_kappa_min;
            break;
        }
    }
    return out;
}

struct NeededStats {
    bool k = false, f = false, g = false, j = false;
};

NeededStats needed_stats(const std::vector<CurveKind>& stats) {
    NeededStats n;
    for (CurveKind s : stats) {
        switch (s) {
            case CurveKind::K: n.k = true; break;
            case CurveKind::F: n.f = true; break;
            case CurveKind::G: n.g = true; break;
            case CurveKind::J: n.j = true; break;
        }
    }
    return n;
}

struct StatCurves {
    std::optional<Curve> k, f, g, j;
};

StatCurves compute_curves(const PointPattern& x, const RGrid& grid, const NeededStats& need,
                          std::size_t f_resolution) {
    StatCurves out;
    if (need.k) out.k = estimate_K(x, grid);
    if (need.f || need.j) out.f = estimate_F(x, grid, f_resolution);
    if (need.g || need.j) out.g = estimate_G(x, grid);
    if (need.j) out.j = j_from_fg(*out.f, *out.g);
    return out;
}

const Curve& pick(const StatCurves& c, CurveKind kind) {
    switch (kind) {
        case CurveKind::K: return *c.k;
        case CurveKind::F: return *c.f;
        case CurveKind::G: return *c.g;
        case CurveKind::J: return *c.j;
    }
    throw std::logic_error("unreachable");
}

} // namespace

StudyResult run_study(const StudyConfig& cfg) {
    cfg.validate();
    const RGrid grid = RGrid::regular(cfg.rmax, cfg.rgrid_size);
    const NeededStats need = needed_stats(cfg.statistics);
    const std::size_t rows_per_rep = cfg.conditional_flags.size() * cfg.statistics.size();

    // true-parameter context shared across replications (and used for data)
    const SimContext true_ctx(cfg.model, cfg, cfg.poisson, cfg.lgcp, cfg.strauss, cfg.dpp);

    std::vector<std::vector<StudyRow>> per_rep(cfg.n_data);
    parallel_for(cfg.n_data, cfg.threads, [&](std::size_t rep) {
        std::vector<StudyRow>& rows = per_rep[rep];
        rows.reserve(rows_per_rep);

        Rng data_rng(SeedSpec{cfg.seed, stream_id(rep, 0, 0)});
        const PointPattern data = true_ctx.sample_unconditional(data_rng);
        const std::size_t data_n = data.size();

        FittedModel fitted;
        std::string fit_error;
        if (cfg.refit) {
            try {
                if (data.empty()) throw EmptyPattern("no points to fit");
                fitted = fit_model(cfg, data);
            } catch (const std::exception& e) {
                fitted.excluded = true;
                fit_error = e.what();
            }
        }

        std::optional<SimContext> fitted_ctx;
        if (cfg.refit && !fitted.excluded) {
            try {
                fitted_ctx.emplace(cfg.model, cfg, fitted.poisson, fitted.lgcp, fitted.strauss,
                                   fitted.dpp);
            } catch (const std::exception& e) {
                fitted.excluded = true;
                fit_error = e.what();
            }
        }
        const SimContext& sim_ctx = (cfg.refit && fitted_ctx) ? *fitted_ctx : true_ctx;

        StatCurves data_curves;
        std::string data_error = fit_error;
        if (data_error.empty()) {
            try {
                if (data.empty()) throw EmptyPattern("empty data pattern");
                data_curves = compute_curves(data, grid, need, cfg.f_resolution);
            } catch (const std::exception& e) {
                data_error = e.what();
            }
        }

        for (bool conditional : cfg.conditional_flags) {
            std::string flag_error = data_error;
            std::vector<StatCurves> sims;
            std::size_t sim_n_min = std::numeric_limits<std::size_t>::max();
            std::size_t sim_n_max = 0;
            const bool flag_excluded = cfg.refit && fitted.excluded;

            if (flag_error.empty() && !flag_excluded) {
                sims.reserve(cfg.n_env);
                try {
                    for (std::size_t j = 0; j < cfg.n_env; ++j) {
                        Rng rng(SeedSpec{cfg.seed, stream_id(rep, conditional ? 1 : 2, j + 1)});
                        const PointPattern sim = conditional
                                                     ? sim_ctx.sample_conditional(data_n, rng)
                                                     : sim_ctx.sample_unconditional(rng);
                        sim_n_min = std::min(sim_n_min, sim.size());
                        sim_n_max = std::max(sim_n_max, sim.size());
                        sims.push_back(compute_curves(sim, grid, need, cfg.f_resolution));
                    }
                } catch (const std::exception& e) {
                    flag_error = e.what();
                    sims.clear();
                }
            }

            for (CurveKind stat : cfg.statistics) {
                StudyRow row;
                row.rep = rep;
                row.stat = stat;
                row.conditional = conditional;
                row.fitted = cfg.refit;
                row.fitted_params = fitted.params;
                row.excluded = flag_excluded;
                row.data_n = data_n;
                row.area = std::numeric_limits<double>::quiet_NaN();
                row.p_value = std::numeric_limits<double>::quiet_NaN();
                if (!flag_error.empty()) {
                    row.error = flag_error;
                } else if (!flag_excluded) {
                    row.sim_n_min = sim_n_min;
                    row.sim_n_max = sim_n_max;
                    try {
                        std::vector<Curve> sim_curves;
                        sim_curves.reserve(sims.size());
                        for (const StatCurves& c : sims) sim_curves.push_back(pick(c, stat));
                        const CurveSet cs(pick(data_curves, stat), sim_curves);
                        const Envelope env = global_envelope(cs, cfg.alpha);
                        row.area = envelope_area(env);
                        row.p_value = env.p_value;
                    } catch (const std::exception& e) {
                        row.error = e.what();
                    }
                }
                rows.push_back(std::move(row));
            }
        }
    });

    StudyResult result;
    result.rows.reserve(cfg.n_data * rows_per_rep);
    for (auto& rows : per_rep) {
        for (auto& row : rows) result.rows.push_back(std::move(row));
    }

    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        write_rows_csv((std::filesystem::path(cfg.out_dir) / "rows.csv").string(), result.rows);
        write_manifest_json((std::filesystem::path(cfg.out_dir) / "manifest.json").string(), cfg);
    }
    return result;
}

void write_rows_csv(const std::string& path, const std::vector<StudyRow>& rows) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << std::setprecision(17);
    os << "rep,stat,conditional,fitted,excluded,data_n,sim_n_min,sim_n_max,area,p_value,"
          "fitted_params,error\n";
    for (const StudyRow& r : rows) {
        std::ostringstream params;
        bool first = true;
        for (const auto& [k, v] : r.fitted_params) {
            if (!first) params << ';';
            params << k << '=' << std::setprecision(17) << v;
            first = false;
        }
        std::string error = r.error;
        std::replace(error.begin(), error.end(), ',', ';');
        std::replace(error.begin(), error.end(), '\n', ' ');
        os << r.rep << ',' << to_string(r.stat) << ',' << (r.conditional ? 1 : 0) << ','
           << (r.fitted ? 1 : 0) << ',' << (r.excluded ? 1 : 0) << ',' << r.data_n << ','
           << r.sim_n_min << ',' << r.sim_n_max << ',' << r.area << ',' << r.p_value << ','
           << params.str() << ',' << error << '\n';
    }
}

void write_manifest_json(const std::string& path, const StudyConfig& cfg) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["seed"] = cfg.seed;
    j["model"] = to_string(cfg.model);
    j["n_data"] = cfg.n_data;
    j["n_env"] = cfg.n_env;
    j["refit"] = cfg.refit;
    j["alpha"] = cfg.alpha;
    std::vector<std::string> stats;
    for (CurveKind s : cfg.statistics) stats.push_back(to_string(s));
    j["statistics"] = stats;
    j["conditional"] = cfg.conditional_flags;
    switch (cfg.model) {
        case ModelKind::Poisson: j["params"] = {{"rho", cfg.poisson.rho}}; break;
        case ModelKind::Lgcp:
            j["params"] = {{"rho", cfg.lgcp.rho}, {"sigma2", cfg.lgcp.sigma2},
                           {"delta", cfg.lgcp.delta}};
            break;
        case ModelKind::Strauss:
            j["params"] = {{"beta", cfg.strauss.beta}, {"gamma", cfg.strauss.gamma},
                           {"R", cfg.strauss.R}};
            break;
        case ModelKind::Dpp:
            j["params"] = {{"rho", cfg.dpp.rho}, {"kappa", cfg.dpp.kappa}};
            break;
    }
    j["exclude_delta_max"] = cfg.exclude_delta_max;
    j["exclude_kappa_min"] = cfg.exclude_kappa_min;
    j["rgrid_size"] = cfg.rgrid_size;
    j["rmax"] = cfg.rmax;
    j["f_resolution"] = cfg.f_resolution;
    j["field_grid"] = {cfg.field_nx, cfg.field_ny};
    j["quad_resolution"] = cfg.quad_resolution;

    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << j.dump(2) << '\n';
}

Table1 run_table1(bool simulate, std::size_t reps, std::uint64_t seed, std::size_t threads) {
    const std::vector<double> betas{50.0, 200.0};
    const std::vector<double> gammas{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};

    Table1 table;
    table.sim_reps = simulate ? reps : 0;
    for (double beta : betas) {
        for (double gamma : gammas) {
            Table1Cell cell;
            cell.beta = beta;
            cell.gamma = gamma;
            cell.approx_mean = ripley_count_mean(StraussParams{beta, gamma, 0.05});
            table.cells.push_back(cell);
        }
    }

    if (simulate) {
        const Window w = Window::unit_square();
        for (std::size_t c = 0; c < table.cells.size(); ++c) {
            Table1Cell& cell = table.cells[c];
            const StraussParams p{cell.beta, cell.gamma, 0.05};
            std::vector<double> counts(reps, 0.0);
            parallel_for(reps, threads, [&](std::size_t rep) {
                const SeedSpec spec{seed, (static_cast<std::uint64_t>(c) << 32) | rep};
                counts[rep] = static_cast<double>(
                    sample_strauss(p, w, ChainConfig::strauss_default(p.R), spec).size());
            });
            double total = 0.0;
            for (double v : counts) total += v;
            cell.sim_mean = total / static_cast<double>(reps);
        }
    }
    return table;
}

void write_table1_csv(const std::string& path, const Table1& table) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << "beta,gamma,approx_mean,sim_mean,sim_reps\n";
    os << std::fixed << std::setprecision(6);
    for (const Table1Cell& cell : table.cells) {
        os << cell.beta << ',' << cell.gamma << ',' << cell.approx_mean << ',';
        if (cell.sim_mean) {
            os << *cell.sim_mean;
        }
        os << ',' << table.sim_reps << '\n';
    }
}

MpleComparison run_mple_comparison(std::size_t n_reps, std::uint64_t seed, std::size_t threads,
                                   std::size_t quad_resolution) {
    if (n_reps < 1) throw ConfigError("mple comparison: n_reps must be >= 1");
    MpleComparison cmp;
    cmp.rows.resize(n_reps);
    const Window w = Window::unit_square();
    parallel_for(n_reps, threads, [&](std::size_t rep) {
        MpleComparisonRow& row = cmp.rows[rep];
        row.rep = rep;
        Rng aux(SeedSpec{seed, stream_id(rep, 3, 0)});
        const double gamma = aux.uniform(0.01, 1.0);
        row.gamma_true = gamma;
        const StraussParams p{200.0, gamma, 0.05};
        try {
            const PointPattern x = sample_strauss(p, w, ChainConfig::strauss_default(p.R),
                                                  SeedSpec{seed, stream_id(rep, 0, 0)});
            row.gamma_unconditional = mple_strauss(x, p.R, quad_resolution).params.at("gamma");
            row.gamma_conditional =
                mple_strauss_conditional(x, p.R, quad_resolution).params.at("gamma");
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    });

    double total = 0.0;
    double worst = 0.0;
    std::size_t used = 0;
    for (const auto& row : cmp.rows) {
        if (!row.error.empty()) {
            ++cmp.failures;
            continue;
        }
        const double d = std::abs(row.gamma_conditional - row.gamma_unconditional);
        total += d;
        worst = std::max(worst, d);
        ++used;
    }
    cmp.mean_abs_diff = used > 0 ? total / static_cast<double>(used) : 0.0;
    cmp.max_abs_diff = worst;
    return cmp;
}

void write_mple_csv(const std::string& path, const MpleComparison& cmp) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << std::setprecision(17);
    os << "rep,gamma_true,gamma_unconditional,gamma_conditional,abs_diff,error\n";
    for (const auto& row : cmp.rows) {
        std::string error = row.error;
        std::replace(error.begin(), error.end(), ',', ';');
        os << row.rep << ',' << row.gamma_true << ',' << row.gamma_unconditional << ','
           << row.gamma_conditional << ','
           << std::abs(row.gamma_conditional - row.gamma_unconditional) << ',' << error << '\n';
    }
}

} // namespace ppsim
