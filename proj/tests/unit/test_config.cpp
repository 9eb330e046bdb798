#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "pioneer/config.hpp"
#include "pioneer/errors.hpp"

using namespace pioneer;

namespace {

std::string key_of(auto&& fn) {
    try {
        fn();
    } catch (const ConfigError& e) {
        return e.key().empty() ? "<none>" : e.key();
    }
    return "";
}

}  // namespace

TEST_CASE("minimal scenario fills defaults") {
    const auto s = parse_scenario_text("m = 7\nalpha_post = 2.5\n");
    CHECK(s.scenario.experts == 7);
    CHECK(s.scenario.alpha_post == 2.5);
    CHECK(s.scenario.shock_period == 2);
    CHECK(s.scenario.burn_in == 2);
    CHECK(s.scenario.horizon == 12);
    CHECK(s.scenario.seed == 0);
    CHECK(s.scenario.methods.size() == std::size(kAllPoolingKinds));
}

TEST_CASE("every scenario key is honoured") {
    const auto s = parse_scenario_text(R"(# full example
m = 3
alpha_pre = 2.5   # before the break
alpha_post = 1.2
shock_period = 3
T = 20
burn_in = 1
seed = 99
obs_per_period = 2
period_step = 0.5
granger_level = 0.1
regime_mode = reset_at_shock
estimate_rule = posterior_mode
center = median
fallback = uniform
methods = mean, min, pdm_angle
reps = 40
)");
    const auto& c = s.scenario;
    CHECK(c.experts == 3);
    CHECK(c.alpha_pre == 2.5);
    CHECK(c.shock_period == 3);
    CHECK(c.horizon == 20);
    CHECK(c.burn_in == 1);
    CHECK(c.seed == 99);
    CHECK(c.obs_per_period == 2);
    CHECK(c.period_step == 0.5);
    CHECK(c.pooling.granger_significance == 0.1);
    CHECK(c.regime == RegimeMode::reset_at_shock);
    CHECK(c.estimate_rule == EstimateRule::posterior_mode);
    CHECK(c.pooling.pdm.center == Center::median);
    CHECK(c.pooling.pdm.fallback == Fallback::uniform);
    CHECK(c.methods == std::vector<PoolingKind>{PoolingKind::mean, PoolingKind::minimum, PoolingKind::pdm_angle});
    CHECK(s.replications == 40);
}

TEST_CASE("scenario errors name the key") {
    CHECK(key_of([] { parse_scenario_text("alpha_post = -1\n"); }) == "alpha_post");
    CHECK(key_of([] { parse_scenario_text("m = 3\nm = 4\n"); }) == "m");
    CHECK(key_of([] { parse_scenario_text("colour = blue\n"); }) == "colour");
    CHECK(key_of([] { parse_scenario_text("m = three\n"); }) == "m");
    CHECK(key_of([] { parse_scenario_text("m = -3\n"); }) == "m");
    CHECK(key_of([] { parse_scenario_text("T = 2\n"); }) == "T");
    CHECK(key_of([] { parse_scenario_text("regime_mode = sometimes\n"); }) == "regime_mode");
    CHECK(key_of([] { parse_scenario_text("methods = mean, bma\n"); }) == "methods");
    CHECK(key_of([] { parse_scenario_text("methods = mean, mean\n"); }) == "methods");
    CHECK(key_of([] { parse_scenario_text("reps = 1\n"); }) == "reps");
    CHECK(key_of([] { parse_scenario_text("seed =\n"); }) == "seed");
    CHECK(key_of([] { parse_scenario_text("just words\n"); }) == "<none>");
}

TEST_CASE("linear system config") {
    const auto l = parse_linear_ts_text("a = 0.5\nT = 40\nreps = 10\n");
    CHECK(l.linear.a == 0.5);
    CHECK(l.linear.b == 0.8);
    CHECK(l.linear.horizon == 40);
    CHECK(l.replications == 10);
    CHECK(key_of([] { parse_linear_ts_text("c = 1.5\n"); }) == "c");
    CHECK(key_of([] { parse_linear_ts_text("m = 3\n"); }) == "m");
}

TEST_CASE("welfare config") {
    const auto w = parse_welfare_text("alpha_mean = 2\nlambda = 0.1\nm_max = 8\nreps = 100\ntool = pdm_distance\n");
    CHECK(w.welfare.alpha_mean == 2.0);
    CHECK(w.welfare.lambda == 0.1);
    CHECK(w.m_max == 8);
    CHECK(w.replications == 100);
    CHECK(w.tool == PoolingKind::pdm_distance);
    CHECK(w.scenario.alpha_post == 2.0);
    CHECK(key_of([] { parse_welfare_text("alpha_mean = 0.9\n"); }) == "alpha_mean");
    CHECK(key_of([] { parse_welfare_text("lambda = -2\n"); }) == "lambda");
    CHECK(key_of([] { parse_welfare_text("tool = oracle\n"); }) == "tool");
}

TEST_CASE("parse_config reads files") {
    const auto dir = std::filesystem::temp_directory_path() / "pioneer_config_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "s.cfg";
    std::ofstream(path) << "m = 4\r\nalpha_post = 1.5\r\n";
    const auto any = parse_config(path, ConfigKind::scenario);
    CHECK(std::get<SimulateSettings>(any).scenario.experts == 4);
    CHECK_THROWS_AS(parse_config(dir / "missing.cfg", ConfigKind::scenario), ConfigError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("list helpers") {
    CHECK(parse_double_list("alphas", "0.5,1, 1.5") == std::vector<double>{0.5, 1, 1.5});
    CHECK(parse_size_list("ms", "2,5") == std::vector<std::size_t>{2, 5});
    CHECK(key_of([] { parse_double_list("alphas", "0.5,,1"); }) == "alphas");
}
