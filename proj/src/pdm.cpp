#include "pioneer/pdm.hpp"

#include <algorithm>
#include <cmath>

#include "pioneer/errors.hpp"

namespace pioneer {

namespace {

// Cross-sections below this size are scored serially.
constexpr std::size_t kParallelExperts = 64;

void require_lag(const EstimatePanel& panel, std::size_t t, const char* what) {
    if (t == 0) throw ContractViolation(std::string(what) + ": no prior period at t = 0");
    if (t >= panel.periods()) throw ContractViolation(std::string(what) + ": period out of range");
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

double ratio_or_zero(double num, double other) {
    const double den = num + other;
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace

double others_center(const EstimatePanel& panel, std::size_t i, std::size_t t, Center center) {
    if (t >= panel.periods() || i >= panel.experts()) throw ContractViolation("others_center: index out of range");
    const auto col = panel.column(t);
    if (center == Center::mean) {
        double sum = 0.0;
        for (std::size_t j = 0; j < col.size(); ++j) {
            if (j != i) sum += col[j];
        }
        return sum / static_cast<double>(col.size() - 1);
    }
    std::vector<double> others;
    others.reserve(col.size() - 1);
    for (std::size_t j = 0; j < col.size(); ++j) {
        if (j != i) others.push_back(col[j]);
    }
    std::sort(others.begin(), others.end());
    const std::size_t n = others.size();
    return n % 2 == 1 ? others[n / 2] : 0.5 * (others[n / 2 - 1] + others[n / 2]);
}

bool distance_dummy(const EstimatePanel& panel, std::size_t i, std::size_t t, Center center) {
    require_lag(panel, t, "distance_dummy");
    const double now = std::abs(panel(i, t) - others_center(panel, i, t, center));
    const double before = std::abs(panel(i, t - 1) - others_center(panel, i, t - 1, center));
    return now < before;
}

OrientationAngles orientation_angles(const EstimatePanel& panel, std::size_t i, std::size_t t, Center center) {
    require_lag(panel, t, "orientation_angles");
    const double c_now = others_center(panel, i, t, center);
    const double c_before = others_center(panel, i, t - 1, center);
    const double others_move = c_now - c_before;
    const double own_move = panel(i, t) - panel(i, t - 1);
    const double s = panel.step();

    OrientationAngles out;
    out.theta_expert = std::atan(std::abs(own_move) / s);
    out.theta_others = std::atan(std::abs(others_move) / s);
    out.toward = others_move != 0.0 && sign(others_move) == sign(panel(i, t - 1) - c_before);
    return out;
}

bool orientation_dummy(const EstimatePanel& panel, std::size_t i, std::size_t t, Center center) {
    const auto a = orientation_angles(panel, i, t, center);
    return a.toward && a.theta_others > a.theta_expert;
}

double raw_pioneer_score(const EstimatePanel& panel, std::size_t i, std::size_t t, const PdmConfig& cfg) {
    if (!distance_dummy(panel, i, t, cfg.center)) return 0.0;
    const auto a = orientation_angles(panel, i, t, cfg.center);
    if (!(a.toward && a.theta_others > a.theta_expert)) return 0.0;
    if (cfg.weight_kind == WeightKind::angle) return ratio_or_zero(a.theta_others, a.theta_expert);

    const double others_move =
        std::abs(others_center(panel, i, t, cfg.center) - others_center(panel, i, t - 1, cfg.center));
    const double own_move = std::abs(panel(i, t) - panel(i, t - 1));
    return ratio_or_zero(others_move, own_move);
}

std::vector<double> pdm_raw_scores_reference(const EstimatePanel& panel, std::size_t t, const PdmConfig& cfg) {
    require_lag(panel, t, "pdm_raw_scores");
    std::vector<double> scores(panel.experts());
    for (std::size_t i = 0; i < scores.size(); ++i) scores[i] = raw_pioneer_score(panel, i, t, cfg);
    return scores;
}

std::vector<double> pdm_raw_scores(const EstimatePanel& panel, std::size_t t, const PdmConfig& cfg) {
    require_lag(panel, t, "pdm_raw_scores");
    const auto m = static_cast<std::ptrdiff_t>(panel.experts());
    std::vector<double> scores(panel.experts());
#pragma omp parallel for schedule(static) if (panel.experts() >= kParallelExperts)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        scores[static_cast<std::size_t>(i)] = raw_pioneer_score(panel, static_cast<std::size_t>(i), t, cfg);
    }
    return scores;
}

std::vector<double> pdm_weights(const EstimatePanel& panel, std::size_t t, const PdmConfig& cfg,
                                std::optional<std::span<const double>> previous) {
    const std::size_t m = panel.experts();
    if (t >= panel.periods()) throw ContractViolation("pdm_weights: period out of range");
    const std::vector<double> uniform(m, 1.0 / static_cast<double>(m));
    if (t == 0) return uniform;

    std::vector<double> scores = pdm_raw_scores(panel, t, cfg);
    double total = 0.0;
    for (double s : scores) total += s;
    if (total > 0.0) {
        for (double& s : scores) s /= total;
        return scores;
    }
    if (cfg.fallback == Fallback::uniform) return uniform;
    if (!previous) throw ContractViolation("pdm_weights: carry_previous fallback needs the previous weights");
    if (previous->size() != m) throw ContractViolation("pdm_weights: previous weights have the wrong length");
    return {previous->begin(), previous->end()};
}

WeightSeries pdm_weight_series(const EstimatePanel& panel, const PdmConfig& cfg) {
    const std::size_t m = panel.experts();
    WeightSeries series(m, panel.periods());
    for (std::size_t t = 0; t < panel.periods(); ++t) {
        std::vector<double> w;
        if (t == 0) {
            w = pdm_weights(panel, 0, cfg);
        } else {
            const auto scores = pdm_raw_scores(panel, t, cfg);
            double total = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                total += scores[i];
                series.set_pioneer(i, t, scores[i] > 0.0);
            }
            if (total > 0.0) {
                w = scores;
                for (double& s : w) s /= total;
            } else if (cfg.fallback == Fallback::uniform) {
                w.assign(m, 1.0 / static_cast<double>(m));
            } else {
                const auto prev = series.at(t - 1);
                w.assign(prev.begin(), prev.end());
            }
        }
        std::copy(w.begin(), w.end(), series.at(t).begin());
    }
    return series;
}

double pdm_pool(const EstimatePanel& panel, std::size_t t, const PdmConfig& cfg, const WeightSeries& history) {
    if (t >= 1 && history.periods() < t) throw ContractViolation("pdm_pool: weight history must cover [0, t)");
    const auto w = t == 0 ? pdm_weights(panel, 0, cfg) : pdm_weights(panel, t, cfg, history.at(t - 1));
    const auto col = panel.column(t);
    double pooled = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) pooled += w[i] * col[i];
    return pooled;
}

std::vector<double> pooled_series(const EstimatePanel& panel, const WeightSeries& weights) {
    if (weights.experts() != panel.experts() || weights.periods() != panel.periods()) {
        throw ContractViolation("pooled_series: weight and panel shapes differ");
    }
    std::vector<double> out(panel.periods());
    for (std::size_t t = 0; t < panel.periods(); ++t) {
        const auto col = panel.column(t);
        const auto w = weights.at(t);
        double pooled = 0.0;
        for (std::size_t i = 0; i < col.size(); ++i) pooled += w[i] * col[i];
        out[t] = pooled;
    }
    return out;
}

}  // namespace pioneer
