#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pioneer/core_model.hpp"
#include "pioneer/panel.hpp"
#include "pioneer/pdm.hpp"

namespace pioneer {

enum class PoolingKind {
    mean,
    median,
    minimum,
    granger,
    lagged_correlation,
    vincentization,
    pdm_angle,
    pdm_distance,
};

inline constexpr PoolingKind kAllPoolingKinds[] = {
    PoolingKind::mean,        PoolingKind::median,         PoolingKind::minimum,   PoolingKind::granger,
    PoolingKind::lagged_correlation, PoolingKind::vincentization, PoolingKind::pdm_angle, PoolingKind::pdm_distance,
};

std::string_view to_string(PoolingKind kind) noexcept;
std::optional<PoolingKind> parse_pooling_kind(std::string_view name) noexcept;

/// True for methods whose output is a weight vector over experts.
bool produces_weights(PoolingKind kind) noexcept;

struct PoolingOptions {
    static constexpr std::size_t lag = 1;
    double granger_significance = 0.05;
    PdmConfig pdm;  // weight_kind is overridden by pdm_angle / pdm_distance
};

double mean_of(std::span<const double> values);
double median_of(std::span<const double> values);

double mean_pool(const EstimatePanel& panel, std::size_t t);
double median_pool(const EstimatePanel& panel, std::size_t t);
/// Smallest tail index, i.e. the fattest tail and most conservative premium.
double min_pool(const EstimatePanel& panel, std::size_t t);

struct GrangerResult {
    double f_statistic = 0.0;
    double p_value = 1.0;
};

/// Lag-1 Granger test of `cause` on `effect` using observations [0, n):
/// OLS of effect[k] on (1, effect[k-1]) against (1, effect[k-1], cause[k-1]), k = 1..n-1.
/// p_value is 1 when the test is undefined (no residual degrees of freedom or a singular design).
GrangerResult granger_test(std::span<const double> effect, std::span<const double> cause);

/// Weight of expert i is (1 - p) when its lagged series Granger-causes the
/// others' mean at the given level, 0 otherwise; normalized, uniform if nobody
/// is significant. Uses periods [0, t]; needs t >= 3.
std::vector<double> granger_weights(const EstimatePanel& panel, std::size_t t, double significance = 0.05);

/// Pearson correlation; 0 when either series has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// max(0, corr(y_i(k-1), c_{-i}(k))) over k = 1..t, normalized, uniform
/// fallback when no score is positive. Needs t >= 2.
std::vector<double> lagged_corr_weights(const EstimatePanel& panel, std::size_t t);

/// 0.01, 0.02, ..., 0.99.
std::vector<double> default_quantile_grid();

/// Pooled quantile function: per-expert Gamma quantiles averaged pointwise.
std::vector<double> vincentize_quantiles(std::span<const ExpertPosterior> posteriors, std::span<const double> probs);

/// Median of the vincentized quantile function.
double vincentize(std::span<const ExpertPosterior> posteriors);

/// One-step forecast phi * y[t] with phi fitted by least squares (no
/// intercept) on the pairs (y[k-1], y[k]), k = 1..t. Needs t >= 2.
double ar1_forecast(std::span<const double> series, std::size_t t);

/// Weight series for a weight-producing method over the whole panel. Periods
/// where the method lacks history use uniform weights.
WeightSeries pooling_weight_series(const EstimatePanel& panel, PoolingKind kind, const PoolingOptions& options = {});

/// Pooled estimate at every period for any panel-based method (not vincentization).
std::vector<double> pool_series(const EstimatePanel& panel, PoolingKind kind, const PoolingOptions& options = {});

}  // namespace pioneer
