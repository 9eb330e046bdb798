#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pioneer/core_model.hpp"
#include "pioneer/metrics.hpp"
#include "pioneer/panel.hpp"
#include "pioneer/pooling.hpp"

namespace pioneer {

enum class RegimeMode {
    reset_at_shock,  // posteriors restart from the improper prior at the shock
    full_history,    // posteriors keep accumulating across the break
};

struct ScenarioConfig {
    std::size_t experts = 5;
    double alpha_pre = 3.0;
    double alpha_post = 1.5;
    std::size_t shock_period = 2;
    std::size_t horizon = 12;
    std::size_t burn_in = 2;
    RegimeMode regime = RegimeMode::full_history;
    std::uint64_t seed = 0;
    EstimateRule estimate_rule = EstimateRule::posterior_mean;
    std::size_t obs_per_period = 1;
    double period_step = 1.0;
    PoolingOptions pooling;
    std::vector<PoolingKind> methods{std::begin(kAllPoolingKinds), std::end(kAllPoolingKinds)};

    /// Throws ConfigError naming the offending key.
    void validate() const;
};

struct MethodOutput {
    PoolingKind kind = PoolingKind::mean;
    std::vector<double> pooled;  // NaN at unusable periods
    WeightSeries weights;        // empty for methods without weights
};

/// Contiguous run of periods at which every expert has a defined estimate.
struct Segment {
    std::size_t first = 0;
    std::size_t count = 0;
};

struct SimulationRun {
    TruthSeries truth;
    std::size_t experts = 0;
    std::vector<double> estimates;              // period-major m x T, NaN where undefined
    std::vector<ExpertPosterior> posteriors;    // period-major m x T, after the period's update
    std::vector<double> full_information;       // pooled post-shock posterior estimate, NaN before the shock
    std::vector<Segment> segments;
    std::vector<MethodOutput> methods;

    std::size_t periods() const noexcept { return truth.values.size(); }
    double estimate(std::size_t i, std::size_t t) const { return estimates[t * experts + i]; }
    const ExpertPosterior& posterior(std::size_t i, std::size_t t) const { return posteriors[t * experts + i]; }
    bool usable(std::size_t t) const;
    EstimatePanel panel(const Segment& segment, double step = 1.0) const;
    const MethodOutput& method(PoolingKind kind) const;

    friend bool operator==(const SimulationRun&, const SimulationRun&);
};

/// One replication of the tipping-point scenario. Expert i's losses come from
/// the sub-stream (seed, replication, i), so the run is a pure function of its inputs.
SimulationRun run_scenario(const ScenarioConfig& cfg, std::uint64_t replication = 0);

/// Pools a panel with every configured method (posteriors feed vincentization).
std::vector<MethodOutput> pool_all(const SimulationRun& run, const ScenarioConfig& cfg);

struct MonteCarloOptions {
    int threads = 0;          // 0: OpenMP default
    bool keep_runs = false;   // retain every SimulationRun (for weights.csv)
};

struct MonteCarloResult {
    MetricsReport report;             // post-shock periods shock..T-1
    std::vector<SimulationRun> runs;  // filled when keep_runs
};

/// Replications in parallel; aggregation happens serially in replication
/// order, so results do not depend on the thread count.
MonteCarloResult run_monte_carlo(const ScenarioConfig& cfg, std::size_t replications, MonteCarloOptions options = {});

/// Single-threaded reference of run_monte_carlo.
MonteCarloResult run_monte_carlo_serial(const ScenarioConfig& cfg, std::size_t replications, bool keep_runs = false);

struct LinearTsConfig {
    double a = 0.2;
    double b = 0.8;
    double c = 0.2;
    double d = 0.4;
    double e = 0.4;
    double noise_sd = 1.0;
    std::size_t horizon = 30;
    std::uint64_t seed = 0;

    void validate() const;
};

struct LinearSeries {
    std::vector<double> x, y, z;
};

/// x_t = x_{t-1} + eps, y_t = a y_{t-1} + b x_{t-1} + nu,
/// z_t = c z_{t-1} + d y_{t-1} + e x_{t-1} + xi, all starting at 0.
LinearSeries gen_linear_ts(const LinearTsConfig& cfg, std::uint64_t replication = 0);

/// Replication-averaged weight each method puts on x, y and z. Each method is
/// averaged over the periods where it has enough history (PDM t >= 1, lagged
/// correlation t >= 2, Granger t >= 3).
struct LinearTsStudy {
    std::vector<PoolingKind> methods;
    std::vector<std::array<double, 3>> average_weights;
};

LinearTsStudy run_linear_ts_study(const LinearTsConfig& cfg, std::size_t replications,
                                  const PoolingOptions& options = {}, int threads = 0);

struct GaussianPanel {
    EstimatePanel panel;
    std::vector<double> truth;
};

/// Each expert reports the running mean of its private N(mu, sd^2) draws.
GaussianPanel gen_gaussian_panel(std::size_t experts, std::size_t horizon, double mu, double sd, std::uint64_t seed,
                                 std::uint64_t replication = 0);

/// RMSE of panel-based methods on Gaussian panels over all periods 0..T-1.
MetricsReport run_gaussian_monte_carlo(std::size_t experts, std::size_t horizon, double mu, double sd,
                                       std::uint64_t seed, std::size_t replications,
                                       const std::vector<PoolingKind>& methods, const PoolingOptions& options = {},
                                       int threads = 0);

}  // namespace pioneer
