#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pioneer/simulation.hpp"

namespace pioneer {

struct WelfareConfig {
    double wealth_c = 10.0;           // c in log[c - a * alpha / (alpha - 1)]
    double indemnity_scale_a = 1.0;   // a
    double supervisory_cost = 0.0;    // c_S, paid by both interventions
    double lambda = 0.0;              // audit cost per collected observation
    double n_obs = 1.0;               // observations collected per insurer by an audit (#x = n_obs * m)
    double alpha_mean = 1.5;          // expansion point mu
    double confidence = 0.95;

    void validate() const;
};

/// First-order (delta method) variance of log[c - a alpha/(alpha-1)] around mu:
/// (a / ((mu-1) [c (mu-1) - a mu]))^2 * var_alpha.
double utility_variance_delta(const WelfareConfig& cfg, double var_alpha);

struct SigmaRatioFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;

    double predict(double m) const noexcept { return intercept + slope * m; }
};

/// OLS line ratio = intercept + slope * m; needs at least 3 distinct sizes.
SigmaRatioFit sigma_ratio_fit(std::span<const double> market_sizes, std::span<const double> ratios);

enum class Intervention { pool, audit, none };
std::string_view to_string(Intervention choice) noexcept;

struct InterventionDecision {
    Intervention choice = Intervention::pool;
    double loss_pool = 0.0;    // utility-variance loss + c_S
    double loss_audit = 0.0;   // utility-variance loss + c_S + lambda * #x
    std::optional<double> loss_none;
    double net_benefit_audit = 0.0;          // loss_pool - loss_audit
    double net_benefit_audit_no_lambda = 0.0;
};

/// Compares pooling against a full-information audit of m insurers (and,
/// when var_none is given, against no intervention at zero cost). Ties go to pool.
InterventionDecision intervention_comparison(const WelfareConfig& cfg, double var_pool, double var_full, std::size_t m,
                                             std::optional<double> var_none = std::nullopt);

struct WelfarePipelineConfig {
    WelfareConfig welfare;
    ScenarioConfig scenario;      // alpha_post is taken from welfare.alpha_mean
    std::size_t m_min = 2;
    std::size_t m_max = 12;
    std::size_t replications = 2000;
    std::size_t eval_offset = 0;  // evaluation period = shock_period + eval_offset
    PoolingKind tool = PoolingKind::pdm_angle;

    void validate() const;
};

struct WelfareRow {
    std::size_t m = 0;
    double sigma_tool = 0.0;   // root-mean-square deviation from the true alpha
    double sigma_full = 0.0;
    double sigma_mean = 0.0;   // linear pool, the market's own synthetic belief
    double ratio = 0.0;        // sigma_tool / sigma_full
    double fit = 0.0;
    double net_benefit_no_lambda = 0.0;
    double net_benefit_lambda = 0.0;
    double normalized_no_lambda = 0.0;
    double normalized_lambda = 0.0;
    Intervention decision = Intervention::pool;
};

struct WelfareCurve {
    std::vector<WelfareRow> rows;
    SigmaRatioFit fit;
};

/// Monte Carlo over market sizes m_min..m_max: dispersion of the pooled tool
/// and of the full-information estimator at the evaluation period, the
/// sigma-ratio fit and the net benefit of auditing. Normalized columns divide
/// by the largest |net benefit without lambda| across m. An audit collects
/// every post-shock observation, so n_obs is set from the scenario.
WelfareCurve run_welfare_pipeline(const WelfarePipelineConfig& cfg, int threads = 0);

}  // namespace pioneer
