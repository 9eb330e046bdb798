#include "pioneer/welfare.hpp"

#include <algorithm>
#include <cmath>

#include "pioneer/errors.hpp"

namespace pioneer {

void WelfareConfig::validate() const {
    if (!(alpha_mean > 1.0)) throw ConfigError("alpha_mean", "must exceed 1");
    if (!(wealth_c > 0.0)) throw ConfigError("wealth_c", "must be positive");
    if (!(indemnity_scale_a > 0.0)) throw ConfigError("indemnity_scale_a", "must be positive");
    if (wealth_c * (alpha_mean - 1.0) - indemnity_scale_a * alpha_mean == 0.0) {
        throw ConfigError("wealth_c", "expansion denominator c (mu - 1) - a mu vanishes");
    }
    if (!(supervisory_cost >= 0.0)) throw ConfigError("c_S", "must be nonnegative");
    if (!(lambda >= 0.0)) throw ConfigError("lambda", "must be nonnegative");
    if (!(n_obs >= 0.0)) throw ConfigError("n_obs", "must be nonnegative");
    if (!(confidence > 0.0 && confidence < 1.0)) throw ConfigError("confidence", "must lie in (0, 1)");
}

double utility_variance_delta(const WelfareConfig& cfg, double var_alpha) {
    cfg.validate();
    if (!(var_alpha >= 0.0)) throw DomainError("utility_variance_delta: variance must be nonnegative");
    const double mu = cfg.alpha_mean;
    const double c = cfg.wealth_c;
    const double a = cfg.indemnity_scale_a;
    if (!(c - a * mu / (mu - 1.0) > 0.0)) {
        throw DomainError("utility_variance_delta: log argument c - a mu/(mu - 1) is not positive");
    }
    const double k = a / ((mu - 1.0) * (c * (mu - 1.0) - a * mu));
    return k * k * var_alpha;
}

SigmaRatioFit sigma_ratio_fit(std::span<const double> market_sizes, std::span<const double> ratios) {
    if (market_sizes.size() != ratios.size()) throw ContractViolation("sigma_ratio_fit: input lengths differ");
    std::vector<double> distinct(market_sizes.begin(), market_sizes.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 3) throw InsufficientData("sigma_ratio_fit: needs at least 3 distinct market sizes");

    const double n = static_cast<double>(ratios.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < ratios.size(); ++k) {
        mx += market_sizes[k];
        my += ratios[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < ratios.size(); ++k) {
        sxx += (market_sizes[k] - mx) * (market_sizes[k] - mx);
        sxy += (market_sizes[k] - mx) * (ratios[k] - my);
        syy += (ratios[k] - my) * (ratios[k] - my);
    }
    SigmaRatioFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (std::size_t k = 0; k < ratios.size(); ++k) {
        const double r = ratios[k] - fit.predict(market_sizes[k]);
        rss += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - rss / syy : 1.0;
    return fit;
}

std::string_view to_string(Intervention choice) noexcept {
    switch (choice) {
        case Intervention::pool: return "pool";
        case Intervention::audit: return "audit";
        case Intervention::none: return "none";
    }
    return "unknown";
}

InterventionDecision intervention_comparison(const WelfareConfig& cfg, double var_pool, double var_full, std::size_t m,
                                             std::optional<double> var_none) {
    cfg.validate();
    if (!(var_pool >= 0.0) || !(var_full >= 0.0) || (var_none && !(*var_none >= 0.0))) {
        throw DomainError("intervention_comparison: variances must be nonnegative");
    }
    const double collection_cost = cfg.lambda * cfg.n_obs * static_cast<double>(m);
    InterventionDecision d;
    d.loss_pool = utility_variance_delta(cfg, var_pool) + cfg.supervisory_cost;
    d.loss_audit = utility_variance_delta(cfg, var_full) + cfg.supervisory_cost + collection_cost;
    d.net_benefit_audit = d.loss_pool - d.loss_audit;
    d.net_benefit_audit_no_lambda = d.net_benefit_audit + collection_cost;
    d.choice = d.loss_audit < d.loss_pool ? Intervention::audit : Intervention::pool;
    if (var_none) {
        d.loss_none = utility_variance_delta(cfg, *var_none);
        if (*d.loss_none < std::min(d.loss_pool, d.loss_audit)) d.choice = Intervention::none;
    }
    return d;
}

void WelfarePipelineConfig::validate() const {
    welfare.validate();
    if (m_min < 2) throw ConfigError("m_min", "must be >= 2");
    if (m_max < m_min + 2) throw ConfigError("m_max", "needs at least 3 market sizes");
    if (replications < 2) throw ConfigError("reps", "must be >= 2");
    if (tool == PoolingKind::vincentization) throw ConfigError("tool", "must be a panel-based method");
}

WelfareCurve run_welfare_pipeline(const WelfarePipelineConfig& cfg, int threads) {
    cfg.validate();
    ScenarioConfig scenario = cfg.scenario;
    scenario.alpha_post = cfg.welfare.alpha_mean;
    scenario.horizon = std::max(scenario.horizon, scenario.shock_period + cfg.eval_offset + 1);
    scenario.methods = {cfg.tool};
    if (cfg.tool != PoolingKind::mean) scenario.methods.push_back(PoolingKind::mean);
    const std::size_t eval = cfg.eval_offset;  // index into the post-shock periods
    const double truth = scenario.alpha_post;

    WelfareCurve curve;
    std::vector<double> sizes, ratios;
    for (std::size_t m = cfg.m_min; m <= cfg.m_max; ++m) {
        scenario.experts = m;
        // per-m seed
        scenario.seed = mix64(cfg.scenario.seed ^ (0x5eedULL + m));
        const MonteCarloResult mc = run_monte_carlo(scenario, cfg.replications, {threads, true});

        double sq_tool = 0.0, sq_full = 0.0, sq_mean = 0.0;
        const std::size_t t = scenario.shock_period + eval;
        for (const SimulationRun& run : mc.runs) {
            const double tool = run.method(cfg.tool).pooled[t];
            const double full = run.full_information[t];
            const double mean = run.method(PoolingKind::mean).pooled[t];
            if (!std::isfinite(tool) || !std::isfinite(full) || !std::isfinite(mean)) {
                throw InsufficientData("welfare pipeline: estimates undefined at the evaluation period");
            }
            sq_tool += (tool - truth) * (tool - truth);
            sq_full += (full - truth) * (full - truth);
            sq_mean += (mean - truth) * (mean - truth);
        }
        const double n = static_cast<double>(mc.runs.size());
        WelfareRow row;
        row.m = m;
        row.sigma_tool = std::sqrt(sq_tool / n);
        row.sigma_full = std::sqrt(sq_full / n);
        row.sigma_mean = std::sqrt(sq_mean / n);
        row.ratio = row.sigma_tool / row.sigma_full;

        WelfareConfig wc = cfg.welfare;
        wc.n_obs = static_cast<double>(scenario.obs_per_period * (eval + 1));
        const auto d = intervention_comparison(wc, row.sigma_tool * row.sigma_tool, row.sigma_full * row.sigma_full, m,
                                               row.sigma_mean * row.sigma_mean);
        row.net_benefit_no_lambda = d.net_benefit_audit_no_lambda;
        row.net_benefit_lambda = d.net_benefit_audit;
        row.decision = d.choice;
        curve.rows.push_back(row);
        sizes.push_back(static_cast<double>(m));
        ratios.push_back(row.ratio);
    }
    curve.fit = sigma_ratio_fit(sizes, ratios);
    double scale = 0.0;
    for (const auto& row : curve.rows) scale = std::max(scale, std::abs(row.net_benefit_no_lambda));
    for (auto& row : curve.rows) {
        row.fit = curve.fit.predict(static_cast<double>(row.m));
        row.normalized_no_lambda = scale > 0.0 ? row.net_benefit_no_lambda / scale : 0.0;
        row.normalized_lambda = scale > 0.0 ? row.net_benefit_lambda / scale : 0.0;
    }
    return curve;
}

}  // namespace pioneer
