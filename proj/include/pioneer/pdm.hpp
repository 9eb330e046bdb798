#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pioneer/panel.hpp"

namespace pioneer {

// Pioneer Detection Method.
//
// An expert i is a pioneer at period t when
//   1. its distance to the others' center shrank strictly since t-1, and
//   2. the others' center moved toward i's previous estimate, by a steeper
//      angle than i's own move.
// Its raw score is then the share of the convergence made by the others,
// theta_others / (theta_others + theta_i) (or the same ratio with vertical
// moves for the distance variant). Scores are normalized per period; when no
// pioneer exists the fallback rule decides.

enum class Center { mean, median };
enum class WeightKind { angle, distance };
enum class Fallback { carry_previous, uniform };

struct PdmConfig {
    Center center = Center::mean;
    WeightKind weight_kind = WeightKind::angle;
    Fallback fallback = Fallback::carry_previous;
};

/// Mean or median of {estimate(j, t) : j != i}.
double others_center(const EstimatePanel& panel, std::size_t i, std::size_t t, Center center);

/// |y_i(t) - c(t)| < |y_i(t-1) - c(t-1)|, strictly.
bool distance_dummy(const EstimatePanel& panel, std::size_t i, std::size_t t, Center center);

struct OrientationAngles {
    double theta_expert = 0.0;  // arctan(|dy_i| / s)
    double theta_others = 0.0;  // arctan(|dc| / s)
    bool toward = false;        // others moved in the direction of y_i(t-1)
};

OrientationAngles orientation_angles(const EstimatePanel& panel, std::size_t i, std::size_t t, Center center);

/// toward && theta_others > theta_expert, strictly.
bool orientation_dummy(const EstimatePanel& panel, std::size_t i, std::size_t t, Center center);

/// Product of both dummies and the attribution ratio; in [0, 1].
double raw_pioneer_score(const EstimatePanel& panel, std::size_t i, std::size_t t, const PdmConfig& cfg);

/// Raw scores of every expert at t (t >= 1). Experts are scored in parallel
/// for large cross-sections; the result is identical to the serial reference.
std::vector<double> pdm_raw_scores(const EstimatePanel& panel, std::size_t t, const PdmConfig& cfg);
std::vector<double> pdm_raw_scores_reference(const EstimatePanel& panel, std::size_t t, const PdmConfig& cfg);

/// Normalized weights at t. Uniform at t = 0; otherwise normalized raw scores,
/// or the fallback when every score is zero. `previous` is required when
/// t >= 1 and cfg.fallback is carry_previous.
std::vector<double> pdm_weights(const EstimatePanel& panel, std::size_t t, const PdmConfig& cfg,
                                std::optional<std::span<const double>> previous = std::nullopt);

/// Weights and pioneer flags for every period, processed in order.
WeightSeries pdm_weight_series(const EstimatePanel& panel, const PdmConfig& cfg);

/// Pooled estimate at t from weights derived with `history` (which must hold periods [0, t)).
double pdm_pool(const EstimatePanel& panel, std::size_t t, const PdmConfig& cfg, const WeightSeries& history);

/// sum_i w_i(t) * y_i(t) for every period.
std::vector<double> pooled_series(const EstimatePanel& panel, const WeightSeries& weights);

}  // namespace pioneer
