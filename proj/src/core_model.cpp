#include "pioneer/core_model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "pioneer/errors.hpp"

namespace pioneer {

namespace {

void require_positive_alpha(double alpha, const char* what) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError(std::string(what) + ": alpha must be positive and finite, got " + std::to_string(alpha));
    }
}

}  // namespace

ParetoLaw::ParetoLaw(double alpha) : alpha_(alpha) { require_positive_alpha(alpha, "ParetoLaw"); }

double pareto_mean(double alpha) {
    require_positive_alpha(alpha, "pareto_mean");
    if (alpha <= 1.0) return std::numeric_limits<double>::infinity();
    return alpha / (alpha - 1.0);
}

double pareto_survival(double alpha, double x) {
    require_positive_alpha(alpha, "pareto_survival");
    if (!(x >= 1.0)) throw DomainError("pareto_survival: x must be >= 1, got " + std::to_string(x));
    return std::pow(x, -alpha);
}

double pareto_from_uniform(double u, double alpha) {
    require_positive_alpha(alpha, "pareto_from_uniform");
    if (!(u > 0.0 && u < 1.0)) throw DomainError("pareto_from_uniform: u must lie in (0, 1)");
    return std::pow(u, -1.0 / alpha);
}

std::vector<double> sample_losses(Stream& stream, double alpha, std::size_t n) {
    require_positive_alpha(alpha, "sample_losses");
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(pareto_from_uniform(stream.uniform_open(), alpha));
    return out;
}

ExpertPosterior posterior_update(ExpertPosterior post, double loss) {
    if (!(loss >= 1.0)) throw DomainError("posterior_update: loss must be >= 1, got " + std::to_string(loss));
    post.shape += 1.0;
    post.rate += std::log(loss);
    return post;
}

bool estimate_defined(const ExpertPosterior& post, EstimateRule rule) noexcept {
    if (!(post.rate > 0.0)) return false;
    return rule == EstimateRule::posterior_mean ? post.shape >= 1.0 : post.shape > 1.0;
}

double point_estimate(const ExpertPosterior& post, EstimateRule rule) {
    if (!estimate_defined(post, rule)) {
        throw InsufficientData("point_estimate: posterior (shape=" + std::to_string(post.shape) +
                               ", rate=" + std::to_string(post.rate) + ") does not define an estimate");
    }
    return rule == EstimateRule::posterior_mean ? post.shape / post.rate : (post.shape - 1.0) / post.rate;
}

double posterior_quantile(const ExpertPosterior& post, double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("posterior_quantile: p must lie in (0, 1)");
    if (!estimate_defined(post, EstimateRule::posterior_mean)) {
        throw InsufficientData("posterior_quantile: posterior needs shape >= 1 and rate > 0");
    }
    return boost::math::gamma_p_inv(post.shape, p) / post.rate;
}

double expected_indemnity(double alpha_hat) { return pareto_mean(alpha_hat); }

double premium_mean_variance(double alpha_hat, double t, double beta) {
    if (!(alpha_hat > 1.0)) throw DomainError("premium_mean_variance: alpha_hat must exceed 1");
    if (!(t >= 1.0)) throw DomainError("premium_mean_variance: t must be >= 1");
    if (!(beta >= 0.0)) throw DomainError("premium_mean_variance: beta must be nonnegative");
    const double excess = alpha_hat - 1.0;
    return alpha_hat / excess + beta * alpha_hat * alpha_hat / t / std::pow(excess, 4);
}

TruthSeries TruthSeries::tipping_point(double alpha_pre, double alpha_post, std::size_t shock_period,
                                       std::size_t horizon) {
    require_positive_alpha(alpha_pre, "TruthSeries");
    require_positive_alpha(alpha_post, "TruthSeries");
    if (shock_period >= horizon) throw DomainError("TruthSeries: shock_period must lie inside the horizon");
    TruthSeries truth;
    truth.shock_period = shock_period;
    truth.values.resize(horizon);
    for (std::size_t t = 0; t < horizon; ++t) truth.values[t] = t < shock_period ? alpha_pre : alpha_post;
    return truth;
}

}  // namespace pioneer
