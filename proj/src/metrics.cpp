#include "pioneer/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "pioneer/errors.hpp"
#include "pioneer/rng.hpp"

namespace pioneer {

namespace {

std::pair<std::size_t, std::size_t> resolve(Window w, std::size_t size) {
    if (w.first > size) throw ContractViolation("window starts past the end of the series");
    const std::size_t count = std::min(w.count, size - w.first);
    if (count == 0) throw ContractViolation("empty window");
    return {w.first, count};
}

double median_sorted(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double rmse(std::span<const double> estimates, std::span<const double> truth, Window window) {
    if (estimates.size() != truth.size()) throw ContractViolation("rmse: series lengths differ");
    const auto [first, count] = resolve(window, estimates.size());
    double sum = 0.0;
    for (std::size_t k = first; k < first + count; ++k) {
        const double e = estimates[k] - truth[k];
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(count));
}

double relative_rmse(std::span<const double> method, std::span<const double> truth, std::span<const double> reference,
                     Window window) {
    const double base = rmse(reference, truth, window);
    if (!(base > 0.0)) throw DomainError("relative_rmse: reference forecast has zero error");
    return rmse(method, truth, window) / base;
}

double sample_std(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

StabilityStats stability_stats(std::span<const double> per_period_rmse, std::size_t first_k) {
    if (first_k == 0) throw ContractViolation("stability_stats: first_k must be positive");
    if (first_k > per_period_rmse.size()) {
        throw ContractViolation("stability_stats: asked for " + std::to_string(first_k) + " periods, only " +
                                std::to_string(per_period_rmse.size()) + " available");
    }
    const auto head = per_period_rmse.first(first_k);
    StabilityStats s;
    for (double v : head) s.mean += v;
    s.mean /= static_cast<double>(first_k);
    s.median = median_sorted({head.begin(), head.end()});
    s.std = sample_std(head);
    return s;
}

std::size_t MetricsReport::method_index(const std::string& name) const {
    for (std::size_t k = 0; k < methods.size(); ++k) {
        if (methods[k].name == name) return k;
    }
    throw ContractViolation("MetricsReport: no method named " + name);
}

MetricsReport summarize_errors(std::vector<std::string> method_names, std::vector<std::size_t> periods,
                               std::size_t replications, std::vector<double> errors) {
    if (errors.size() != method_names.size() * periods.size() * replications) {
        throw ContractViolation("summarize_errors: error tensor has the wrong size");
    }
    MetricsReport report;
    report.periods = std::move(periods);
    report.replications = replications;
    report.errors = std::move(errors);
    const double n = static_cast<double>(replications);
    for (std::size_t k = 0; k < method_names.size(); ++k) {
        MethodMetrics mm;
        mm.name = std::move(method_names[k]);
        for (std::size_t p = 0; p < report.periods.size(); ++p) {
            double sum = 0.0, sum_sq = 0.0;
            for (std::size_t r = 0; r < replications; ++r) {
                const double sq = report.error(k, p, r) * report.error(k, p, r);
                sum += sq;
                sum_sq += sq * sq;
            }
            const double mse = sum / n;
            const double value = std::sqrt(mse);
            // Delta method on sqrt(MSE): se(RMSE) = se(MSE) / (2 RMSE).
            double se = 0.0;
            if (replications > 1 && value > 0.0) {
                const double var_sq = std::max(0.0, (sum_sq - n * mse * mse) / (n - 1.0));
                se = std::sqrt(var_sq / n) / (2.0 * value);
            }
            mm.rmse.push_back(value);
            mm.mc_se.push_back(se);
        }
        std::vector<double> usable;
        for (double v : mm.rmse) {
            if (std::isfinite(v)) usable.push_back(v);
        }
        if (!usable.empty()) mm.stability = stability_stats(usable, std::min<std::size_t>(10, usable.size()));
        report.methods.push_back(std::move(mm));
    }
    return report;
}

Interval paired_bootstrap_rmse_difference(const MetricsReport& report, std::size_t method_a, std::size_t method_b,
                                          std::size_t period, std::size_t resamples, std::uint64_t seed,
                                          double confidence) {
    const std::size_t n = report.replications;
    if (n < 2 || resamples < 2) throw ContractViolation("paired bootstrap needs >= 2 replications and resamples");
    Stream stream(seed, 0, 0, StreamPurpose::bootstrap);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<double> diffs(resamples);
    for (std::size_t b = 0; b < resamples; ++b) {
        double sa = 0.0, sb = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t r = pick(stream);
            const double ea = report.error(method_a, period, r);
            const double eb = report.error(method_b, period, r);
            sa += ea * ea;
            sb += eb * eb;
        }
        diffs[b] = std::sqrt(sa / static_cast<double>(n)) - std::sqrt(sb / static_cast<double>(n));
    }
    std::sort(diffs.begin(), diffs.end());
    const double tail = (1.0 - confidence) / 2.0;
    const auto at = [&](double q) {
        const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(resamples - 1)));
        return diffs[std::min(idx, resamples - 1)];
    };
    return {at(tail), at(1.0 - tail)};
}

}  // namespace pioneer
