// Acceptance suite: one PASS/FAIL line per criterion. Exit status is 0 when
// every criterion was evaluated (pass or fail); --strict turns any FAIL into
// a nonzero exit.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

#include "pioneer/core_model.hpp"
#include "pioneer/metrics.hpp"
#include "pioneer/pdm.hpp"
#include "pioneer/pooling.hpp"
#include "pioneer/simulation.hpp"
#include "pioneer/welfare.hpp"
#include "support/oracles.hpp"

using namespace pioneer;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScenarioConfig head_to_head() {
    ScenarioConfig cfg;
    cfg.experts = 5;
    cfg.alpha_pre = 3.0;
    cfg.alpha_post = 1.5;
    cfg.horizon = 12;
    cfg.seed = 20240101;
    return cfg;
}

// First post-shock period at which PDM weights come from scores rather than
// the t = 0 initialization of a segment.
std::size_t first_weighted_period(const ScenarioConfig& cfg) {
    const auto run = run_scenario(cfg, 0);
    for (std::size_t t = cfg.shock_period; t < cfg.horizon; ++t) {
        for (const auto& s : run.segments) {
            if (t > s.first && t < s.first + s.count) return t;
        }
    }
    return cfg.shock_period;
}

Verdict criterion1() {
    // Tolerances: strict inequality on RMSE; 95% paired percentile bootstrap, 2000 resamples; 60 s budget.
    const auto t0 = std::chrono::steady_clock::now();
    ScenarioConfig cfg = head_to_head();
    cfg.methods = {PoolingKind::pdm_angle, PoolingKind::mean, PoolingKind::median, PoolingKind::minimum};
    const auto mc = run_monte_carlo(cfg, 1000);
    const double secs = seconds_since(t0);
    const std::size_t t = first_weighted_period(cfg);
    const std::size_t p = t - cfg.shock_period;
    const auto& rep = mc.report;
    const double pdm = rep.methods[0].rmse[p];
    bool pass = secs <= 60.0;
    std::ostringstream d;
    d << "t=" << t << " pdm=" << fmt("%.4f", pdm);
    for (std::size_t k = 1; k < 4; ++k) {
        const double other = rep.methods[k].rmse[p];
        const auto ci = paired_bootstrap_rmse_difference(rep, 0, k, p, 2000, 7, 0.95);
        const bool wins = pdm < other && ci.upper < 0.0;
        pass = pass && wins;
        d << " " << rep.methods[k].name << "=" << fmt("%.4f", other) << " ci=[" << fmt("%.4f", ci.lower) << ","
          << fmt("%.4f", ci.upper) << "]";
    }
    d << " runtime=" << fmt("%.2f", secs) << "s";
    return {pass, d.str()};
}

Verdict criterion2() {
    // Tolerances: PDM best in >= 80% of cells; PDM RMSE <= 1.05 x best competitor in every cell.
    const double alphas[] = {0.5, 1.0, 1.5, 2.0, 3.0};
    const std::size_t ms[] = {2, 5, 10, 20};
    int cells = 0, best = 0;
    double worst_gap = 0.0;
    std::string worst_cell;
    for (double a : alphas) {
        for (std::size_t m : ms) {
            ScenarioConfig cfg = head_to_head();
            cfg.alpha_post = a;
            cfg.experts = m;
            const auto mc = run_monte_carlo(cfg, 500);
            const std::size_t pdm = mc.report.method_index("pdm_angle");
            const double pdm_score = mc.report.methods[pdm].stability.mean;
            double rival = INFINITY;
            for (std::size_t k = 0; k < mc.report.methods.size(); ++k) {
                if (k != pdm) rival = std::min(rival, mc.report.methods[k].stability.mean);
            }
            ++cells;
            best += pdm_score < rival;
            const double gap = pdm_score / rival - 1.0;
            if (gap > worst_gap) {
                worst_gap = gap;
                worst_cell = "alpha=" + fmt("%g", a) + ",m=" + std::to_string(m);
            }
        }
    }
    const double share = static_cast<double>(best) / cells;
    const bool pass = share >= 0.8 && worst_gap <= 0.05;
    return {pass, "pdm best in " + std::to_string(best) + "/" + std::to_string(cells) + " cells; worst excess " +
                      fmt("%.1f", 100 * worst_gap) + "% (" + (worst_cell.empty() ? "none" : worst_cell) + ")"};
}

Verdict criterion3() {
    // Tolerance: std(PDM) <= std(mean) over the first ten evaluated periods.
    ScenarioConfig cfg = head_to_head();
    const auto mc = run_monte_carlo(cfg, 1000);
    const auto& r = mc.report;
    const double pdm = r.methods[r.method_index("pdm_angle")].stability.std;
    const double mean = r.methods[r.method_index("mean")].stability.std;
    const double mn = r.methods[r.method_index("minimum")].stability.std;
    return {pdm <= mean, "std pdm=" + fmt("%.4f", pdm) + " mean=" + fmt("%.4f", mean) + " min=" + fmt("%.4f", mn)};
}

Verdict criterion4() {
    // Tolerances: RMSE(mean) <= RMSE(PDM) at every t <= 10; late gap < 0.5 x early gap.
    const auto rep = run_gaussian_monte_carlo(5, 40, 1.5, 1.0, 99, 1000, {PoolingKind::mean, PoolingKind::pdm_angle});
    const auto& mean = rep.methods[0].rmse;
    const auto& pdm = rep.methods[1].rmse;
    bool early_ok = true;
    for (std::size_t t = 0; t <= 10; ++t) early_ok = early_ok && mean[t] <= pdm[t];
    auto gap = [&](std::size_t a, std::size_t b) {
        double s = 0;
        for (std::size_t t = a; t <= b; ++t) s += std::fabs(pdm[t] - mean[t]);
        return s / static_cast<double>(b - a + 1);
    };
    const double early = gap(3, 13), late = gap(30, 39);
    return {early_ok && late < 0.5 * early, std::string("mean<=pdm for t<=10: ") + (early_ok ? "yes" : "no") +
                                                 "; gap early=" + fmt("%.4f", early) + " late=" + fmt("%.4f", late)};
}

// Mean |pdm - mean| over periods [a, b] and replications, i.i.d. Pareto data.
double pdm_mean_gap(std::size_t m, std::size_t horizon, std::size_t a, std::size_t b, std::size_t reps) {
    ScenarioConfig cfg;
    cfg.experts = m;
    cfg.alpha_pre = cfg.alpha_post = 1.5;
    cfg.horizon = horizon;
    cfg.seed = 4242;
    cfg.methods = {PoolingKind::mean, PoolingKind::pdm_angle};
    std::vector<double> per_rep(reps);
    #pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(reps); ++r) {
        const auto run = run_scenario(cfg, static_cast<std::uint64_t>(r));
        double s = 0;
        for (std::size_t t = a; t <= b; ++t) s += std::fabs(run.methods[1].pooled[t] - run.methods[0].pooled[t]);
        per_rep[static_cast<std::size_t>(r)] = s / static_cast<double>(b - a + 1);
    }
    double total = 0;
    for (double v : per_rep) total += v;
    return total / static_cast<double>(reps);
}

Verdict criterion5() {
    // Tolerances: strictly decreasing gap across m = 10, 50, 200 (periods 5-20); late < early for m = 5; 500 reps.
    const double g10 = pdm_mean_gap(10, 21, 5, 20, 500);
    const double g50 = pdm_mean_gap(50, 21, 5, 20, 500);
    const double g200 = pdm_mean_gap(200, 21, 5, 20, 500);
    const double early = pdm_mean_gap(5, 41, 3, 13, 500);
    const double late = pdm_mean_gap(5, 41, 30, 40, 500);
    const bool p1 = g10 > g50 && g50 > g200;
    const bool p2 = late < early;
    return {p1 && p2, "gap m=10:" + fmt("%.4f", g10) + " m=50:" + fmt("%.4f", g50) + " m=200:" + fmt("%.4f", g200) +
                          "; m=5 early=" + fmt("%.4f", early) + " late=" + fmt("%.4f", late)};
}

Verdict criterion6() {
    // Tolerance: strict ordering w(x) > w(y) > w(z) for PDM, Granger and lagged correlation.
    const auto study = run_linear_ts_study(LinearTsConfig{}, 500);
    bool pass = true;
    std::ostringstream d;
    for (std::size_t k = 0; k < study.methods.size(); ++k) {
        const auto& w = study.average_weights[k];
        const bool ordered = w[0] > w[1] && w[1] > w[2];
        if (study.methods[k] != PoolingKind::pdm_distance) pass = pass && ordered;
        d << (k ? " " : "") << to_string(study.methods[k]) << "=(" << fmt("%.3f", w[0]) << "," << fmt("%.3f", w[1])
          << "," << fmt("%.3f", w[2]) << ")";
    }
    return {pass, d.str()};
}

Verdict criterion7() {
    // Tolerances: normalized net benefit <= 0 for m in {2,3,4}; R^2 >= 0.9.
    WelfarePipelineConfig cfg;
    cfg.m_min = 2;
    cfg.m_max = 12;
    cfg.welfare.alpha_mean = 1.5;
    cfg.welfare.lambda = 0.0;
    cfg.scenario.seed = 515;
    const auto curve = run_welfare_pipeline(cfg);
    bool small_ok = true;
    std::ostringstream d;
    for (const auto& r : curve.rows) {
        if (r.m <= 4) small_ok = small_ok && r.normalized_no_lambda <= 0.0;
        if (r.m <= 6) d << "m=" << r.m << ":" << fmt("%+.3f", r.normalized_no_lambda) << " ";
    }
    d << "R2=" << fmt("%.3f", curve.fit.r_squared);
    return {small_ok && curve.fit.r_squared >= 0.9, d.str()};
}

Verdict criterion8() {
    // Tolerances: exact equality of weights; |quantile - bisection| <= 1e-6 * max(1, |q|).
    std::mt19937_64 g(808);
    std::uniform_real_distribution<double> u(0.5, 4.0);
    int exact = 0;
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<std::vector<double>> rows(3, std::vector<double>(5));
        for (auto& r : rows)
            for (auto& v : r) v = u(g);
        const auto panel = EstimatePanel::from_rows(rows);
        const auto expect = oracle::pdm_weights(rows, 1.0, true, true);
        bool same = true;
        std::vector<double> prev;
        for (std::size_t t = 0; t < 5; ++t) {
            const auto w = t == 0 ? pdm_weights(panel, 0, {}) : pdm_weights(panel, t, {}, std::span<const double>(prev));
            same = same && w == expect[t];
            prev = w;
        }
        exact += same;
    }
    std::uniform_real_distribution<double> shape(1.0, 50.0), rate(0.05, 20.0), prob(0.001, 0.999);
    int close = 0;
    double worst = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const ExpertPosterior post{shape(g), rate(g)};
        const double p = prob(g);
        const double q = posterior_quantile(post, p);
        const double ref = oracle::gamma_quantile(post.shape, post.rate, p);
        const double err = std::fabs(q - ref) / std::max(1.0, std::fabs(ref));
        worst = std::max(worst, err);
        close += err <= 1e-6;
    }
    return {exact == 200 && close == 100, "weights exact " + std::to_string(exact) + "/200; quantiles " +
                                              std::to_string(close) + "/100 (max err " + fmt("%.2e", worst) + ")"};
}

Verdict criterion9() {
    // Tolerances: identical dummies and flags; shifted pool within 1e-9 relative; identical RMSE ranking under log.
    std::mt19937_64 g(909);
    std::uniform_real_distribution<double> u(0.5, 4.0), scale(0.1, 10.0), shift(-5.0, 5.0);
    int invariant = 0, commutes = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t m = 3 + rep % 5;
        std::vector<std::vector<double>> rows(m, std::vector<double>(6));
        for (auto& r : rows)
            for (auto& v : r) v = u(g);
        const auto panel = EstimatePanel::from_rows(rows);
        const double a = scale(g), b = shift(g);
        const auto moved = panel.transformed([&](double v) { return a * v + b; });
        bool same = true;
        for (auto c : {Center::mean, Center::median}) {
            for (std::size_t t = 1; t < 6; ++t) {
                for (std::size_t i = 0; i < m; ++i) {
                    same = same && distance_dummy(panel, i, t, c) == distance_dummy(moved, i, t, c);
                    same = same && orientation_dummy(panel, i, t, c) == orientation_dummy(moved, i, t, c);
                }
            }
            const PdmConfig cfg{c, WeightKind::angle, Fallback::carry_previous};
            const auto wa = pdm_weight_series(panel, cfg), wb = pdm_weight_series(moved, cfg);
            for (std::size_t t = 0; t < 6; ++t)
                for (std::size_t i = 0; i < m; ++i) same = same && wa.pioneer(i, t) == wb.pioneer(i, t);
        }
        invariant += same;

        const auto shifted = panel.transformed([&](double v) { return v + b; });
        bool ok = true;
        for (auto kind : {PoolingKind::pdm_angle, PoolingKind::pdm_distance}) {
            const auto base = pool_series(panel, kind), sh = pool_series(shifted, kind);
            for (std::size_t t = 0; t < 6; ++t) ok = ok && std::fabs(sh[t] - (base[t] + b)) <= 1e-9 * (1 + std::fabs(sh[t]));
        }
        commutes += ok;
    }

    // RMSE ranking over the evaluated post-shock periods, raw vs log scale.
    ScenarioConfig cfg = head_to_head();
    const std::vector<PoolingKind> kinds{PoolingKind::pdm_angle, PoolingKind::mean, PoolingKind::median,
                                         PoolingKind::minimum};
    cfg.methods = kinds;
    const std::size_t reps = 1000;
    std::vector<double> raw_sq(kinds.size(), 0.0), log_sq(kinds.size(), 0.0);
    std::size_t count = 0;
    for (std::size_t r = 0; r < reps; ++r) {
        const auto run = run_scenario(cfg, r);
        for (const auto& seg : run.segments) {
            const auto panel = run.panel(seg, cfg.period_step);
            const auto logged = panel.transformed([](double v) { return std::log(v); });
            for (std::size_t k = 0; k < kinds.size(); ++k) {
                const auto lp = pool_series(logged, kinds[k], cfg.pooling);
                for (std::size_t j = 0; j < seg.count; ++j) {
                    const std::size_t t = seg.first + j;
                    if (t < cfg.shock_period) continue;
                    const double e = run.method(kinds[k]).pooled[t] - run.truth.values[t];
                    const double le = lp[j] - std::log(run.truth.values[t]);
                    raw_sq[k] += e * e;
                    log_sq[k] += le * le;
                    if (k == 0) ++count;
                }
            }
        }
    }
    auto ranking = [&](const std::vector<double>& sq) {
        std::vector<std::size_t> order(kinds.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sq[x] < sq[y]; });
        std::string s;
        for (std::size_t k : order) s += (s.empty() ? "" : "<") + std::string(to_string(kinds[k]));
        return s;
    };
    const std::string raw = ranking(raw_sq), logged = ranking(log_sq);
    const bool pass = invariant == 100 && commutes == 100 && raw == logged;
    return {pass, "identification " + std::to_string(invariant) + "/100; shift " + std::to_string(commutes) +
                      "/100; ranking raw " + raw + " | log " + logged + " (" + std::to_string(count) + " obs)"};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Verdict criterion10() {
    // Tolerance: byte-identical CSV files for thread counts 1, 2 and 4.
    const fs::path dir = fs::temp_directory_path() / "pioneer_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "scenario.cfg") << "m = 6\nalpha_post = 1.5\nT = 12\nseed = 31337\nreps = 64\n";
    std::vector<std::string> names{"rmse_by_period.csv", "stability.csv", "weights.csv"};
    std::vector<std::string> baseline;
    bool same = true;
    for (int threads : {1, 2, 4}) {
        const fs::path out = dir / ("t" + std::to_string(threads));
        const std::string cmd = std::string(PIONEER_CLI_PATH) + " simulate --config " + (dir / "scenario.cfg").string() +
                                " --threads " + std::to_string(threads) + " --out " + out.string() + " > /dev/null";
        const int status = std::system(cmd.c_str());
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {false, "simulate exited abnormally"};
        for (std::size_t k = 0; k < names.size(); ++k) {
            const std::string bytes = slurp(out / names[k]);
            if (threads == 1) baseline.push_back(bytes);
            else same = same && bytes == baseline[k];
        }
    }
    std::size_t bytes = 0;
    for (const auto& b : baseline) bytes += b.size();
    fs::remove_all(dir);
    return {same, "threads 1/2/4 over " + std::to_string(names.size()) + " files, " + std::to_string(bytes) + " bytes"};
}

}  // namespace

int main(int argc, char** argv) {
    const bool strict = argc > 1 && std::string(argv[1]) == "--strict";
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"fat-tail head-to-head", criterion1},  {"robustness grid", criterion2},
        {"stability", criterion3},              {"gaussian control", criterion4},
        {"convergence properties", criterion5}, {"linear-system pioneership", criterion6},
        {"welfare threshold", criterion7},      {"oracle equivalence", criterion8},
        {"identification invariance", criterion9}, {"determinism", criterion10},
    };
    int passed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Verdict v;
        try {
            v = criteria[k].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        passed += v.pass;
        std::printf("%s criterion %zu (%s): %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("acceptance: %d/%zu criteria pass\n", passed, criteria.size());
    return strict && passed != static_cast<int>(criteria.size()) ? 1 : 0;
}
