#pragma once

#include <cstddef>
#include <vector>

#include "pioneer/rng.hpp"

namespace pioneer {

/// Pareto Type I loss law with the threshold normalized to one.
class ParetoLaw {
public:
    explicit ParetoLaw(double alpha);

    double alpha() const noexcept { return alpha_; }
    static constexpr double threshold() noexcept { return 1.0; }

private:
    double alpha_;
};

/// E[X] = alpha / (alpha - 1); +infinity for alpha <= 1.
double pareto_mean(double alpha);

/// Pr(X > x) = x^(-alpha) for x >= 1.
double pareto_survival(double alpha, double x);

/// Inverse-transform draw x = u^(-1/alpha) for u in (0, 1).
double pareto_from_uniform(double u, double alpha);

std::vector<double> sample_losses(Stream& stream, double alpha, std::size_t n);

/// Gamma(shape, rate) posterior over the tail index. Starting from the
/// improper Gamma(0, 0) prior, shape counts observations and rate
/// accumulates log-losses.
struct ExpertPosterior {
    double shape = 0.0;
    double rate = 0.0;

    friend bool operator==(const ExpertPosterior&, const ExpertPosterior&) = default;
};

ExpertPosterior posterior_update(ExpertPosterior post, double loss);

enum class EstimateRule { posterior_mean, posterior_mode };

bool estimate_defined(const ExpertPosterior& post, EstimateRule rule = EstimateRule::posterior_mean) noexcept;

/// shape/rate (mean) or (shape-1)/rate (mode). Throws InsufficientData while
/// the estimate is undefined: mean needs shape >= 1 and rate > 0, mode needs shape > 1.
double point_estimate(const ExpertPosterior& post, EstimateRule rule = EstimateRule::posterior_mean);

/// Gamma inverse CDF at p.
double posterior_quantile(const ExpertPosterior& post, double p);

/// Expected indemnity under the unit-deductible contract; same formula as pareto_mean.
double expected_indemnity(double alpha_hat);

/// Mean-variance premium alpha/(alpha-1) + beta * alpha^2 / t / (alpha-1)^4.
double premium_mean_variance(double alpha_hat, double t, double beta);

/// True tail index per period with a single jump at shock_period.
struct TruthSeries {
    std::vector<double> values;
    std::size_t shock_period = 0;

    static TruthSeries tipping_point(double alpha_pre, double alpha_post, std::size_t shock_period,
                                     std::size_t horizon);
};

}  // namespace pioneer
