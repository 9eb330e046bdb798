#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace pioneer {

/// Periods [first, first + count); the default covers the whole series.
struct Window {
    std::size_t first = 0;
    std::size_t count = std::numeric_limits<std::size_t>::max();
};

double rmse(std::span<const double> estimates, std::span<const double> truth, Window window = {});

/// rmse(method) / rmse(reference), both against truth over the same window.
double relative_rmse(std::span<const double> method, std::span<const double> truth,
                     std::span<const double> reference, Window window = {});

struct StabilityStats {
    double mean = 0.0;
    double median = 0.0;
    double std = 0.0;  // sample standard deviation (n - 1)
};

/// Statistics of the first `first_k` entries of a per-period RMSE series.
StabilityStats stability_stats(std::span<const double> per_period_rmse, std::size_t first_k = 10);

double sample_std(std::span<const double> values);

struct MethodMetrics {
    std::string name;
    std::vector<double> rmse;   // per evaluated period
    std::vector<double> mc_se;  // Monte Carlo standard error of each rmse entry
    StabilityStats stability;
};

/// Per-method, per-period RMSE against the truth across replications.
/// `errors` keeps the raw (pooled - truth) values, indexed by
/// error(method, period, replication), for paired resampling.
struct MetricsReport {
    std::vector<std::size_t> periods;
    std::vector<MethodMetrics> methods;
    std::size_t replications = 0;
    std::vector<double> errors;

    double error(std::size_t method, std::size_t period, std::size_t replication) const {
        return errors[(method * periods.size() + period) * replications + replication];
    }
    std::size_t method_index(const std::string& name) const;
};

/// Builds a report from raw errors laid out as in MetricsReport::errors.
/// Stability uses the first min(10, #periods) periods.
MetricsReport summarize_errors(std::vector<std::string> method_names, std::vector<std::size_t> periods,
                               std::size_t replications, std::vector<double> errors);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

/// Percentile bootstrap interval of RMSE(a) - RMSE(b) at one period,
/// resampling replications jointly for both methods.
Interval paired_bootstrap_rmse_difference(const MetricsReport& report, std::size_t method_a, std::size_t method_b,
                                          std::size_t period, std::size_t resamples, std::uint64_t seed,
                                          double confidence = 0.95);

}  // namespace pioneer
