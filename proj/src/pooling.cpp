#include "pioneer/pooling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>
#include <boost/math/distributions/fisher_f.hpp>

#include "pioneer/errors.hpp"

namespace pioneer {

namespace {

struct OlsFit {
    double rss = 0.0;
    bool full_rank = false;
};

OlsFit ols_rss(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    OlsFit fit;
    fit.full_rank = qr.rank() == x.cols();
    if (!fit.full_rank) return fit;
    const Eigen::VectorXd beta = qr.solve(y);
    fit.rss = (y - x * beta).squaredNorm();
    return fit;
}

std::vector<double> others_mean_series(const EstimatePanel& panel, std::size_t i, std::size_t last) {
    std::vector<double> out(last + 1);
    for (std::size_t k = 0; k <= last; ++k) out[k] = others_center(panel, i, k, Center::mean);
    return out;
}

std::vector<double> normalized_or_uniform(std::vector<double> scores) {
    double total = 0.0;
    for (double s : scores) total += s;
    if (total > 0.0) {
        for (double& s : scores) s /= total;
    } else {
        std::fill(scores.begin(), scores.end(), 1.0 / static_cast<double>(scores.size()));
    }
    return scores;
}

}  // namespace

std::string_view to_string(PoolingKind kind) noexcept {
    switch (kind) {
        case PoolingKind::mean: return "mean";
        case PoolingKind::median: return "median";
        case PoolingKind::minimum: return "minimum";
        case PoolingKind::granger: return "granger";
        case PoolingKind::lagged_correlation: return "lagged_correlation";
        case PoolingKind::vincentization: return "vincentization";
        case PoolingKind::pdm_angle: return "pdm_angle";
        case PoolingKind::pdm_distance: return "pdm_distance";
    }
    return "unknown";
}

std::optional<PoolingKind> parse_pooling_kind(std::string_view name) noexcept {
    for (PoolingKind k : kAllPoolingKinds) {
        if (to_string(k) == name) return k;
    }
    if (name == "min") return PoolingKind::minimum;
    return std::nullopt;
}

bool produces_weights(PoolingKind kind) noexcept {
    switch (kind) {
        case PoolingKind::mean:
        case PoolingKind::granger:
        case PoolingKind::lagged_correlation:
        case PoolingKind::pdm_angle:
        case PoolingKind::pdm_distance: return true;
        default: return false;
    }
}

double mean_of(std::span<const double> values) {
    if (values.empty()) throw ContractViolation("mean_of: empty input");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double median_of(std::span<const double> values) {
    if (values.empty()) throw ContractViolation("median_of: empty input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double mean_pool(const EstimatePanel& panel, std::size_t t) { return mean_of(panel.column(t)); }

double median_pool(const EstimatePanel& panel, std::size_t t) { return median_of(panel.column(t)); }

double min_pool(const EstimatePanel& panel, std::size_t t) {
    const auto col = panel.column(t);
    return *std::min_element(col.begin(), col.end());
}

GrangerResult granger_test(std::span<const double> effect, std::span<const double> cause) {
    if (effect.size() != cause.size()) throw ContractViolation("granger_test: series lengths differ");
    GrangerResult result;
    if (effect.size() < 2) return result;
    const auto rows = static_cast<Eigen::Index>(effect.size() - 1);
    const Eigen::Index residual_df = rows - 3;
    if (residual_df < 1) return result;

    Eigen::MatrixXd restricted(rows, 2);
    Eigen::MatrixXd full(rows, 3);
    Eigen::VectorXd y(rows);
    for (Eigen::Index k = 0; k < rows; ++k) {
        const auto prev = static_cast<std::size_t>(k);
        y(k) = effect[prev + 1];
        restricted(k, 0) = full(k, 0) = 1.0;
        restricted(k, 1) = full(k, 1) = effect[prev];
        full(k, 2) = cause[prev];
    }
    const OlsFit r = ols_rss(restricted, y);
    const OlsFit u = ols_rss(full, y);
    if (!r.full_rank || !u.full_rank) return result;

    const double scale = (y.array() - y.mean()).square().sum();
    const double tiny = 1e-14 * std::max(scale, std::numeric_limits<double>::min());
    const double gain = std::max(r.rss - u.rss, 0.0);
    if (u.rss <= tiny) {
        if (gain > tiny) {
            result.f_statistic = std::numeric_limits<double>::infinity();
            result.p_value = 0.0;
        }
        return result;
    }
    result.f_statistic = gain / (u.rss / static_cast<double>(residual_df));
    const boost::math::fisher_f_distribution<double> dist(1.0, static_cast<double>(residual_df));
    result.p_value = boost::math::cdf(boost::math::complement(dist, result.f_statistic));
    return result;
}

std::vector<double> granger_weights(const EstimatePanel& panel, std::size_t t, double significance) {
    if (t < 3) throw InsufficientData("granger_weights: needs t >= 3");
    if (t >= panel.periods()) throw ContractViolation("granger_weights: period out of range");
    if (!(significance > 0.0 && significance < 1.0)) throw DomainError("granger_weights: level must lie in (0, 1)");
    std::vector<double> scores(panel.experts(), 0.0);
    for (std::size_t i = 0; i < panel.experts(); ++i) {
        const auto effect = others_mean_series(panel, i, t);
        std::vector<double> cause = panel.row(i);
        cause.resize(t + 1);
        const auto test = granger_test(effect, cause);
        if (test.p_value < significance) scores[i] = 1.0 - test.p_value;
    }
    return normalized_or_uniform(std::move(scores));
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ContractViolation("pearson: series lengths differ");
    if (x.empty()) return 0.0;
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dx = x[k] - mx;
        const double dy = y[k] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) return 0.0;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> lagged_corr_weights(const EstimatePanel& panel, std::size_t t) {
    if (t < 2) throw InsufficientData("lagged_corr_weights: needs t >= 2");
    if (t >= panel.periods()) throw ContractViolation("lagged_corr_weights: period out of range");
    std::vector<double> scores(panel.experts(), 0.0);
    std::vector<double> lagged(t), center(t);
    for (std::size_t i = 0; i < panel.experts(); ++i) {
        for (std::size_t k = 1; k <= t; ++k) {
            lagged[k - 1] = panel(i, k - 1);
            center[k - 1] = others_center(panel, i, k, Center::mean);
        }
        scores[i] = std::max(0.0, pearson(lagged, center));
    }
    return normalized_or_uniform(std::move(scores));
}

std::vector<double> default_quantile_grid() {
    std::vector<double> grid(99);
    for (std::size_t k = 0; k < grid.size(); ++k) grid[k] = static_cast<double>(k + 1) / 100.0;
    return grid;
}

std::vector<double> vincentize_quantiles(std::span<const ExpertPosterior> posteriors, std::span<const double> probs) {
    if (posteriors.empty()) throw ContractViolation("vincentize: no posteriors");
    std::vector<double> pooled(probs.size(), 0.0);
    for (const auto& post : posteriors) {
        for (std::size_t k = 0; k < probs.size(); ++k) pooled[k] += posterior_quantile(post, probs[k]);
    }
    for (double& q : pooled) q /= static_cast<double>(posteriors.size());
    return pooled;
}

double vincentize(std::span<const ExpertPosterior> posteriors) {
    const double half[] = {0.5};
    return vincentize_quantiles(posteriors, half).front();
}

double ar1_forecast(std::span<const double> series, std::size_t t) {
    if (t < 2) throw InsufficientData("ar1_forecast: needs t >= 2");
    if (t >= series.size()) throw ContractViolation("ar1_forecast: period out of range");
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 1; k <= t; ++k) {
        sxy += series[k - 1] * series[k];
        sxx += series[k - 1] * series[k - 1];
    }
    if (!(sxx > 0.0)) throw DomainError("ar1_forecast: regressor is identically zero");
    return sxy / sxx * series[t];
}

WeightSeries pooling_weight_series(const EstimatePanel& panel, PoolingKind kind, const PoolingOptions& options) {
    if (kind == PoolingKind::pdm_angle || kind == PoolingKind::pdm_distance) {
        PdmConfig cfg = options.pdm;
        cfg.weight_kind = kind == PoolingKind::pdm_angle ? WeightKind::angle : WeightKind::distance;
        return pdm_weight_series(panel, cfg);
    }
    if (!produces_weights(kind)) throw ContractViolation("pooling_weight_series: method does not produce weights");

    const std::size_t m = panel.experts();
    WeightSeries series(m, panel.periods());
    const std::vector<double> uniform(m, 1.0 / static_cast<double>(m));
    for (std::size_t t = 0; t < panel.periods(); ++t) {
        std::vector<double> w = uniform;
        if (kind == PoolingKind::granger && t >= 3) w = granger_weights(panel, t, options.granger_significance);
        if (kind == PoolingKind::lagged_correlation && t >= 2) w = lagged_corr_weights(panel, t);
        std::copy(w.begin(), w.end(), series.at(t).begin());
    }
    return series;
}

std::vector<double> pool_series(const EstimatePanel& panel, PoolingKind kind, const PoolingOptions& options) {
    std::vector<double> out(panel.periods());
    switch (kind) {
        case PoolingKind::mean:
            for (std::size_t t = 0; t < out.size(); ++t) out[t] = mean_pool(panel, t);
            return out;
        case PoolingKind::median:
            for (std::size_t t = 0; t < out.size(); ++t) out[t] = median_pool(panel, t);
            return out;
        case PoolingKind::minimum:
            for (std::size_t t = 0; t < out.size(); ++t) out[t] = min_pool(panel, t);
            return out;
        case PoolingKind::vincentization:
            throw ContractViolation("pool_series: vincentization needs expert posteriors, not point estimates");
        default:
            return pooled_series(panel, pooling_weight_series(panel, kind, options));
    }
}

}  // namespace pioneer
