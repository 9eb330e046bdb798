#include "pioneer/simulation.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pioneer/errors.hpp"

namespace pioneer {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int resolve_threads(int requested) {
#ifdef _OPENMP
    return requested > 0 ? requested : omp_get_max_threads();
#else
    (void)requested;
    return 1;
#endif
}

// Runs body(r) for r in [0, n) on `threads` threads, rethrowing the first
// exception after the loop. body must only write to slots owned by r.
template <class Body>
void parallel_replications(std::size_t n, int threads, Body&& body) {
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) num_threads(resolve_threads(threads))
    for (std::ptrdiff_t r = 0; r < count; ++r) {
        try {
            body(static_cast<std::size_t>(r));
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

bool same_double(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

bool same_series(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (!same_double(a[k], b[k])) return false;
    }
    return true;
}

void require_replications(std::size_t replications) {
    if (replications < 2) throw ContractViolation("Monte Carlo needs at least 2 replications");
}

std::vector<std::string> method_names(const std::vector<PoolingKind>& kinds) {
    std::vector<std::string> names;
    for (PoolingKind k : kinds) names.emplace_back(to_string(k));
    return names;
}

}  // namespace

void ScenarioConfig::validate() const {
    if (experts < 2) throw ConfigError("m", "at least 2 experts are required");
    if (!(alpha_pre > 0.0) || !std::isfinite(alpha_pre)) throw ConfigError("alpha_pre", "must be positive");
    if (!(alpha_post > 0.0) || !std::isfinite(alpha_post)) throw ConfigError("alpha_post", "must be positive");
    if (shock_period < burn_in) throw ConfigError("shock_period", "must be >= burn_in");
    if (horizon <= shock_period) throw ConfigError("T", "horizon must exceed shock_period");
    if (obs_per_period < 1) throw ConfigError("obs_per_period", "must be >= 1");
    if (!(period_step > 0.0) || !std::isfinite(period_step)) throw ConfigError("period_step", "must be positive");
    if (!(pooling.granger_significance > 0.0 && pooling.granger_significance < 1.0)) {
        throw ConfigError("granger_level", "must lie in (0, 1)");
    }
    if (methods.empty()) throw ConfigError("methods", "at least one pooling method is required");
}

bool SimulationRun::usable(std::size_t t) const {
    for (const auto& s : segments) {
        if (t >= s.first && t < s.first + s.count) return true;
    }
    return false;
}

EstimatePanel SimulationRun::panel(const Segment& segment, double step) const {
    const auto begin = estimates.begin() + static_cast<std::ptrdiff_t>(segment.first * experts);
    const auto end = begin + static_cast<std::ptrdiff_t>(segment.count * experts);
    return EstimatePanel(experts, segment.count, std::vector<double>(begin, end), step);
}

const MethodOutput& SimulationRun::method(PoolingKind kind) const {
    for (const auto& m : methods) {
        if (m.kind == kind) return m;
    }
    throw ContractViolation("SimulationRun: method " + std::string(to_string(kind)) + " was not run");
}

bool operator==(const SimulationRun& a, const SimulationRun& b) {
    if (a.truth.values != b.truth.values || a.truth.shock_period != b.truth.shock_period) return false;
    if (a.experts != b.experts || a.posteriors != b.posteriors) return false;
    if (!same_series(a.estimates, b.estimates) || !same_series(a.full_information, b.full_information)) return false;
    if (a.segments.size() != b.segments.size() || a.methods.size() != b.methods.size()) return false;
    for (std::size_t k = 0; k < a.segments.size(); ++k) {
        if (a.segments[k].first != b.segments[k].first || a.segments[k].count != b.segments[k].count) return false;
    }
    for (std::size_t k = 0; k < a.methods.size(); ++k) {
        const auto& x = a.methods[k];
        const auto& y = b.methods[k];
        if (x.kind != y.kind || !same_series(x.pooled, y.pooled) || !(x.weights == y.weights)) return false;
    }
    return true;
}

SimulationRun run_scenario(const ScenarioConfig& cfg, std::uint64_t replication) {
    cfg.validate();
    const std::size_t m = cfg.experts;
    const std::size_t horizon = cfg.horizon;

    SimulationRun run;
    run.truth = TruthSeries::tipping_point(cfg.alpha_pre, cfg.alpha_post, cfg.shock_period, horizon);
    run.experts = m;
    run.estimates.assign(m * horizon, kNaN);
    run.posteriors.assign(m * horizon, ExpertPosterior{});

    std::vector<ExpertPosterior> pooled_post_shock(horizon);
    for (std::size_t i = 0; i < m; ++i) {
        Stream stream(cfg.seed, replication, i, StreamPurpose::losses);
        ExpertPosterior post;
        ExpertPosterior since_shock;
        for (std::size_t t = 0; t < horizon; ++t) {
            if (cfg.regime == RegimeMode::reset_at_shock && t == cfg.shock_period) post = ExpertPosterior{};
            for (std::size_t k = 0; k < cfg.obs_per_period; ++k) {
                const double loss = pareto_from_uniform(stream.uniform_open(), run.truth.values[t]);
                post = posterior_update(post, loss);
                if (t >= cfg.shock_period) since_shock = posterior_update(since_shock, loss);
            }
            run.posteriors[t * m + i] = post;
            if (estimate_defined(post, cfg.estimate_rule)) {
                run.estimates[t * m + i] = point_estimate(post, cfg.estimate_rule);
            }
            if (t >= cfg.shock_period) {
                pooled_post_shock[t].shape += since_shock.shape;
                pooled_post_shock[t].rate += since_shock.rate;
            }
        }
    }

    run.full_information.assign(horizon, kNaN);
    for (std::size_t t = cfg.shock_period; t < horizon; ++t) {
        if (estimate_defined(pooled_post_shock[t], cfg.estimate_rule)) {
            run.full_information[t] = point_estimate(pooled_post_shock[t], cfg.estimate_rule);
        }
    }

    std::size_t t = 0;
    while (t < horizon) {
        const auto defined = [&](std::size_t p) {
            for (std::size_t i = 0; i < m; ++i) {
                if (std::isnan(run.estimates[p * m + i])) return false;
            }
            return true;
        };
        if (!defined(t)) {
            ++t;
            continue;
        }
        Segment seg{t, 0};
        while (t < horizon && defined(t)) {
            ++seg.count;
            ++t;
        }
        run.segments.push_back(seg);
    }

    run.methods = pool_all(run, cfg);
    return run;
}

std::vector<MethodOutput> pool_all(const SimulationRun& run, const ScenarioConfig& cfg) {
    const std::size_t m = run.experts;
    const std::size_t horizon = run.periods();
    std::vector<MethodOutput> out;
    for (PoolingKind kind : cfg.methods) {
        MethodOutput mo;
        mo.kind = kind;
        mo.pooled.assign(horizon, kNaN);
        if (produces_weights(kind)) mo.weights = WeightSeries(m, horizon);

        for (const Segment& seg : run.segments) {
            if (kind == PoolingKind::vincentization) {
                for (std::size_t t = seg.first; t < seg.first + seg.count; ++t) {
                    mo.pooled[t] = vincentize(std::span(run.posteriors).subspan(t * m, m));
                }
                continue;
            }
            const EstimatePanel panel = run.panel(seg, cfg.period_step);
            if (produces_weights(kind)) {
                const WeightSeries ws = pooling_weight_series(panel, kind, cfg.pooling);
                const auto pooled = pooled_series(panel, ws);
                for (std::size_t k = 0; k < seg.count; ++k) {
                    const std::size_t t = seg.first + k;
                    mo.pooled[t] = pooled[k];
                    const auto src = ws.at(k);
                    std::copy(src.begin(), src.end(), mo.weights.at(t).begin());
                    for (std::size_t i = 0; i < m; ++i) mo.weights.set_pioneer(i, t, ws.pioneer(i, k));
                }
            } else {
                const auto pooled = pool_series(panel, kind, cfg.pooling);
                std::copy(pooled.begin(), pooled.end(), mo.pooled.begin() + static_cast<std::ptrdiff_t>(seg.first));
            }
        }
        out.push_back(std::move(mo));
    }
    return out;
}

namespace {

MonteCarloResult monte_carlo_impl(const ScenarioConfig& cfg, std::size_t replications, int threads, bool keep_runs,
                                  bool serial) {
    cfg.validate();
    require_replications(replications);
    std::vector<std::size_t> periods;
    for (std::size_t t = cfg.shock_period; t < cfg.horizon; ++t) periods.push_back(t);
    const std::size_t n_methods = cfg.methods.size();
    const std::size_t n_periods = periods.size();

    std::vector<double> errors(n_methods * n_periods * replications, kNaN);
    MonteCarloResult result;
    if (keep_runs) result.runs.resize(replications);

    const auto body = [&](std::size_t r) {
        SimulationRun run = run_scenario(cfg, r);
        for (std::size_t k = 0; k < n_methods; ++k) {
            const auto& pooled = run.methods[k].pooled;
            for (std::size_t p = 0; p < n_periods; ++p) {
                const std::size_t t = periods[p];
                errors[(k * n_periods + p) * replications + r] = pooled[t] - run.truth.values[t];
            }
        }
        if (keep_runs) result.runs[r] = std::move(run);
    };
    if (serial) {
        for (std::size_t r = 0; r < replications; ++r) body(r);
    } else {
        parallel_replications(replications, threads, body);
    }
    result.report = summarize_errors(method_names(cfg.methods), std::move(periods), replications, std::move(errors));
    return result;
}

}  // namespace

MonteCarloResult run_monte_carlo(const ScenarioConfig& cfg, std::size_t replications, MonteCarloOptions options) {
    return monte_carlo_impl(cfg, replications, options.threads, options.keep_runs, false);
}

MonteCarloResult run_monte_carlo_serial(const ScenarioConfig& cfg, std::size_t replications, bool keep_runs) {
    return monte_carlo_impl(cfg, replications, 1, keep_runs, true);
}

void LinearTsConfig::validate() const {
    if (!(std::abs(a) < 1.0)) throw ConfigError("a", "own-lag coefficient must satisfy |a| < 1");
    if (!(std::abs(c) < 1.0)) throw ConfigError("c", "own-lag coefficient must satisfy |c| < 1");
    for (const auto& [key, v] : {std::pair{"b", b}, std::pair{"d", d}, std::pair{"e", e}}) {
        if (!std::isfinite(v)) throw ConfigError(key, "must be finite");
    }
    if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) throw ConfigError("noise_sd", "must be nonnegative");
    if (horizon < 2) throw ConfigError("T", "horizon must be >= 2");
}

LinearSeries gen_linear_ts(const LinearTsConfig& cfg, std::uint64_t replication) {
    cfg.validate();
    Stream stream(cfg.seed, replication, 0, StreamPurpose::linear_ts);
    LinearSeries s;
    s.x.assign(cfg.horizon, 0.0);
    s.y.assign(cfg.horizon, 0.0);
    s.z.assign(cfg.horizon, 0.0);
    for (std::size_t t = 1; t < cfg.horizon; ++t) {
        const double eps = cfg.noise_sd * stream.gaussian();
        const double nu = cfg.noise_sd * stream.gaussian();
        const double xi = cfg.noise_sd * stream.gaussian();
        s.x[t] = s.x[t - 1] + eps;
        s.y[t] = cfg.a * s.y[t - 1] + cfg.b * s.x[t - 1] + nu;
        s.z[t] = cfg.c * s.z[t - 1] + cfg.d * s.y[t - 1] + cfg.e * s.x[t - 1] + xi;
    }
    return s;
}

LinearTsStudy run_linear_ts_study(const LinearTsConfig& cfg, std::size_t replications, const PoolingOptions& options,
                                  int threads) {
    cfg.validate();
    require_replications(replications);
    LinearTsStudy study;
    study.methods = {PoolingKind::pdm_angle, PoolingKind::pdm_distance, PoolingKind::granger,
                     PoolingKind::lagged_correlation};
    const auto first_period = [](PoolingKind k) -> std::size_t {
        if (k == PoolingKind::granger) return 3;
        if (k == PoolingKind::lagged_correlation) return 2;
        return 1;
    };
    for (PoolingKind k : study.methods) {
        if (cfg.horizon <= first_period(k)) throw ConfigError("T", "horizon too short for " + std::string(to_string(k)));
    }

    const std::size_t n_methods = study.methods.size();
    std::vector<std::array<double, 3>> per_rep(replications * n_methods);
    parallel_replications(replications, threads, [&](std::size_t r) {
        const LinearSeries s = gen_linear_ts(cfg, r);
        const EstimatePanel panel = EstimatePanel::from_rows({s.x, s.y, s.z});
        for (std::size_t k = 0; k < n_methods; ++k) {
            const WeightSeries ws = pooling_weight_series(panel, study.methods[k], options);
            std::array<double, 3> avg{0.0, 0.0, 0.0};
            const std::size_t t0 = first_period(study.methods[k]);
            for (std::size_t t = t0; t < panel.periods(); ++t) {
                for (std::size_t i = 0; i < 3; ++i) avg[i] += ws.weight(i, t);
            }
            for (double& v : avg) v /= static_cast<double>(panel.periods() - t0);
            per_rep[r * n_methods + k] = avg;
        }
    });

    study.average_weights.assign(n_methods, {0.0, 0.0, 0.0});
    for (std::size_t r = 0; r < replications; ++r) {
        for (std::size_t k = 0; k < n_methods; ++k) {
            for (std::size_t i = 0; i < 3; ++i) study.average_weights[k][i] += per_rep[r * n_methods + k][i];
        }
    }
    for (auto& w : study.average_weights) {
        for (double& v : w) v /= static_cast<double>(replications);
    }
    return study;
}

GaussianPanel gen_gaussian_panel(std::size_t experts, std::size_t horizon, double mu, double sd, std::uint64_t seed,
                                 std::uint64_t replication) {
    if (experts < 2) throw ConfigError("m", "at least 2 experts are required");
    if (horizon < 1) throw ConfigError("T", "horizon must be >= 1");
    if (!(sd >= 0.0) || !std::isfinite(sd) || !std::isfinite(mu)) throw ConfigError("sd", "must be nonnegative");
    std::vector<double> data(experts * horizon);
    for (std::size_t i = 0; i < experts; ++i) {
        Stream stream(seed, replication, i, StreamPurpose::gaussian_panel);
        double running = 0.0;
        for (std::size_t t = 0; t < horizon; ++t) {
            const double draw = mu + sd * stream.gaussian();
            running += (draw - running) / static_cast<double>(t + 1);
            data[t * experts + i] = running;
        }
    }
    return {EstimatePanel(experts, horizon, std::move(data)), std::vector<double>(horizon, mu)};
}

MetricsReport run_gaussian_monte_carlo(std::size_t experts, std::size_t horizon, double mu, double sd,
                                       std::uint64_t seed, std::size_t replications,
                                       const std::vector<PoolingKind>& methods, const PoolingOptions& options,
                                       int threads) {
    require_replications(replications);
    for (PoolingKind k : methods) {
        if (k == PoolingKind::vincentization) throw ConfigError("methods", "vincentization needs posteriors");
    }
    std::vector<std::size_t> periods(horizon);
    for (std::size_t t = 0; t < horizon; ++t) periods[t] = t;
    std::vector<double> errors(methods.size() * horizon * replications);
    parallel_replications(replications, threads, [&](std::size_t r) {
        const GaussianPanel g = gen_gaussian_panel(experts, horizon, mu, sd, seed, r);
        for (std::size_t k = 0; k < methods.size(); ++k) {
            const auto pooled = pool_series(g.panel, methods[k], options);
            for (std::size_t t = 0; t < horizon; ++t) {
                errors[(k * horizon + t) * replications + r] = pooled[t] - g.truth[t];
            }
        }
    });
    return summarize_errors(method_names(methods), std::move(periods), replications, std::move(errors));
}

}  // namespace pioneer
