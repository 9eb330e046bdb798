#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pioneer/config.hpp"
#include "pioneer/errors.hpp"
#include "pioneer/panel_csv.hpp"
#include "pioneer/report.hpp"
#include "pioneer/simulation.hpp"
#include "pioneer/welfare.hpp"

namespace fs = std::filesystem;
using namespace pioneer;

namespace {

struct Common {
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> reps;
    bool svg = false;
    int threads = 0;
};

void add_common(CLI::App* cmd, Common& c, bool with_reps = true) {
    cmd->add_option("--out", c.out, "output directory (default: $PIONEER_OUT_DIR or ./pioneer_out)");
    cmd->add_option("--seed", c.seed, "seed override");
    if (with_reps) cmd->add_option("--reps", c.reps, "Monte Carlo replications")->check(CLI::Range(2, 100000000));
    cmd->add_option("--threads", c.threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
}

RunManifest manifest_for(const std::string& command, const Common& c, const std::string& config = {}) {
    RunManifest m;
    m.command = command;
    m.config_path = config;
    m.output_dir = c.out.empty() ? default_output_dir() : fs::path(c.out);
    m.seed = c.seed;
    m.svg = c.svg;
    return m;
}

void announce(const std::vector<fs::path>& files) {
    for (const auto& f : files) std::cout << f.string() << '\n';
}

int run_simulate(const std::string& config, const Common& c) {
    auto settings = std::get<SimulateSettings>(parse_config(config, ConfigKind::scenario));
    if (c.seed) settings.scenario.seed = *c.seed;
    if (c.reps) settings.replications = *c.reps;
    const auto result = run_monte_carlo(settings.scenario, settings.replications, {c.threads, true});
    announce(write_report(result.report, result.runs, manifest_for("simulate", c, config)));
    return 0;
}

int run_grid(const std::string& config, const std::string& alphas_text, const std::string& ms_text, const Common& c) {
    SimulateSettings settings;
    settings.replications = 500;
    if (!config.empty()) settings = std::get<SimulateSettings>(parse_config(config, ConfigKind::scenario));
    if (c.seed) settings.scenario.seed = *c.seed;
    if (c.reps) settings.replications = *c.reps;
    const auto alphas = parse_double_list("alphas", alphas_text);
    const auto ms = parse_size_list("ms", ms_text);

    std::ostringstream o;
    o << "alpha_post,m,method,mean_rmse,std_rmse,relative_to_best\n";
    for (double alpha : alphas) {
        for (std::size_t m : ms) {
            ScenarioConfig cfg = settings.scenario;
            cfg.alpha_post = alpha;
            cfg.experts = m;
            cfg.validate();
            const auto result = run_monte_carlo(cfg, settings.replications, {c.threads, false});
            double best = std::numeric_limits<double>::infinity();
            for (const auto& mm : result.report.methods) best = std::min(best, mm.stability.mean);
            for (const auto& mm : result.report.methods) {
                o << format_number(alpha) << ',' << m << ',' << mm.name << ',' << format_number(mm.stability.mean)
                  << ',' << format_number(mm.stability.std) << ',' << format_number(mm.stability.mean / best) << '\n';
            }
        }
    }
    const RunManifest manifest = manifest_for("grid", c, config);
    const fs::path path = manifest.output_dir / "grid.csv";
    write_text_file(path, o.str());
    announce({path});
    return 0;
}

int run_pool(const std::string& panel_path, const std::string& method, const std::string& truth_path,
             double step, const Common& c) {
    const auto kind = parse_pooling_kind(method);
    if (!kind) throw ConfigError("method", "unknown pooling method '" + method + "'");
    if (*kind == PoolingKind::vincentization) {
        throw ConfigError("method", "vincentization needs posteriors, not a point-estimate panel");
    }
    const LoadedPanel loaded = load_panel_csv(panel_path, step);
    const EstimatePanel& panel = loaded.panel;
    std::optional<std::vector<double>> truth;
    if (!truth_path.empty()) {
        truth = load_series_csv(truth_path);
        if (truth->size() != panel.periods()) {
            throw ConfigError("truth", "series length " + std::to_string(truth->size()) + " does not match " +
                                           std::to_string(panel.periods()) + " periods");
        }
    }
    const RunManifest manifest = manifest_for("pool", c);
    std::vector<fs::path> written;

    std::vector<double> pooled;
    if (produces_weights(*kind)) {
        const WeightSeries ws = pooling_weight_series(panel, *kind);
        pooled = pooled_series(panel, ws);
        std::ostringstream w;
        w << "method,expert,period,weight\n";
        for (std::size_t t = 0; t < panel.periods(); ++t) {
            for (std::size_t i = 0; i < panel.experts(); ++i) {
                w << method << ',' << loaded.expert_ids[i] << ',' << t << ',' << format_number(ws.weight(i, t))
                  << '\n';
            }
        }
        write_text_file(manifest.output_dir / "pool_weights.csv", w.str());
        written.push_back(manifest.output_dir / "pool_weights.csv");
    } else {
        pooled = pool_series(panel, *kind);
    }

    std::ostringstream o;
    o << (truth ? "period,pooled,truth\n" : "period,pooled\n");
    for (std::size_t t = 0; t < pooled.size(); ++t) {
        o << t << ',' << format_number(pooled[t]);
        if (truth) o << ',' << format_number((*truth)[t]);
        o << '\n';
    }
    write_text_file(manifest.output_dir / "pooled.csv", o.str());
    written.push_back(manifest.output_dir / "pooled.csv");
    if (truth) {
        const std::vector<double> mean = pool_series(panel, PoolingKind::mean);
        std::ostringstream s;
        s << "method,rmse,relative_rmse_vs_mean\n"
          << method << ',' << format_number(rmse(pooled, *truth)) << ','
          << format_number(relative_rmse(pooled, *truth, mean)) << '\n';
        write_text_file(manifest.output_dir / "pool_summary.csv", s.str());
        written.push_back(manifest.output_dir / "pool_summary.csv");
    }
    announce(written);
    return 0;
}

int run_welfare(const std::string& config, const Common& c) {
    auto cfg = std::get<WelfarePipelineConfig>(parse_config(config, ConfigKind::welfare));
    if (c.seed) cfg.scenario.seed = *c.seed;
    if (c.reps) cfg.replications = *c.reps;
    const WelfareCurve curve = run_welfare_pipeline(cfg, c.threads);
    announce(write_welfare_report(curve, manifest_for("welfare", c, config)));
    return 0;
}

int run_appendix_ts(const std::string& config, const Common& c) {
    auto settings = std::get<LinearTsSettings>(parse_config(config, ConfigKind::linear_ts));
    if (c.seed) settings.linear.seed = *c.seed;
    if (c.reps) settings.replications = *c.reps;
    const LinearTsStudy study = run_linear_ts_study(settings.linear, settings.replications, {}, c.threads);
    announce(write_linear_ts_report(study, manifest_for("appendix-ts", c, config)));
    return 0;
}

int fail(const std::string& kind, const std::string& message, int code,
         const std::optional<std::string>& key = std::nullopt,
         std::optional<std::pair<std::size_t, std::size_t>> where = std::nullopt) {
    nlohmann::json j{{"error", kind}, {"message", message}};
    if (key && !key->empty()) j["key"] = *key;
    if (where) {
        j["row"] = where->first;
        j["column"] = where->second;
    }
    std::cerr << j.dump() << '\n';
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pioneer detection pooling toolkit"};
    app.require_subcommand(1, 1);

    Common common;
    std::string config, panel, method, truth, alphas = "0.5,1,1.5,2,3", ms = "2,5,10,20";
    double step = 1.0;

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo of the tipping-point scenario");
    simulate->add_option("--config", config, "scenario config file")->required();
    simulate->add_flag("--svg", common.svg, "also emit SVG charts");
    add_common(simulate, common);

    auto* grid = app.add_subcommand("grid", "robustness grid over alpha_post and market size");
    grid->add_option("--config", config, "base scenario config file");
    grid->add_option("--alphas", alphas, "comma-separated post-shock tail indices");
    grid->add_option("--ms", ms, "comma-separated market sizes");
    add_common(grid, common);

    auto* pool = app.add_subcommand("pool", "pool an external estimate panel");
    pool->add_option("--panel", panel, "wide CSV panel (expert_id,t0,t1,...)")->required();
    pool->add_option("--method", method, "pooling method")->required();
    pool->add_option("--truth", truth, "optional truth series CSV for RMSE");
    pool->add_option("--step", step, "time step used by the orientation angle")->check(CLI::PositiveNumber);
    pool->add_option("--out", common.out, "output directory");

    auto* welfare = app.add_subcommand("welfare", "net benefit of full information across market sizes");
    welfare->add_option("--config", config, "welfare config file")->required();
    welfare->add_flag("--svg", common.svg, "also emit SVG charts");
    add_common(welfare, common);

    auto* appendix = app.add_subcommand("appendix-ts", "pioneership study on the linear three-series system");
    appendix->add_option("--config", config, "linear system config file")->required();
    add_common(appendix, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    try {
        if (*simulate) return run_simulate(config, common);
        if (*grid) return run_grid(config, alphas, ms, common);
        if (*pool) return run_pool(panel, method, truth, step, common);
        if (*welfare) return run_welfare(config, common);
        if (*appendix) return run_appendix_ts(config, common);
    } catch (const ConfigError& e) {
        return fail("config", e.what(), 3, e.key());
    } catch (const ParseError& e) {
        return fail("parse", e.what(), 4, std::nullopt, std::pair{e.row(), e.column()});
    } catch (const IoError& e) {
        return fail("io", e.what(), 5);
    } catch (const std::exception& e) {
        return fail("runtime", e.what(), 1);
    }
    return fail("usage", "no subcommand", 2);
}
