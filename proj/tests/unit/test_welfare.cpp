#include <doctest.h>

#include <cmath>

#include "pioneer/errors.hpp"
#include "pioneer/welfare.hpp"

using namespace pioneer;

TEST_CASE("delta-method utility variance") {
    WelfareConfig cfg;
    CHECK(utility_variance_delta(cfg, 0.0) == 0.0);
    CHECK(utility_variance_delta(cfg, 1.0) == doctest::Approx(0.3265).epsilon(1e-3));
    CHECK(utility_variance_delta(cfg, 1.0) == doctest::Approx(1.0 / (1.75 * 1.75)));
    CHECK(utility_variance_delta(cfg, 4.0) == doctest::Approx(4.0 * utility_variance_delta(cfg, 1.0)));
    CHECK_THROWS_AS(utility_variance_delta(cfg, -1.0), DomainError);
    WelfareConfig bad;
    bad.wealth_c = 2.0;  // c - a mu/(mu-1) = 2 - 3 < 0
    CHECK_THROWS_AS(utility_variance_delta(bad, 1.0), DomainError);
}

TEST_CASE("delta method against a finite-difference derivative") {
    WelfareConfig cfg;
    cfg.alpha_mean = 2.2;
    cfg.wealth_c = 7.0;
    cfg.indemnity_scale_a = 1.3;
    const auto u = [&](double a) { return std::log(cfg.wealth_c - cfg.indemnity_scale_a * a / (a - 1)); };
    const double h = 1e-6;
    const double d = (u(cfg.alpha_mean + h) - u(cfg.alpha_mean - h)) / (2 * h);
    CHECK(utility_variance_delta(cfg, 0.25) == doctest::Approx(d * d * 0.25).epsilon(1e-6));
}

TEST_CASE("sigma ratio fit") {
    const std::vector<double> m{2, 3, 4, 5}, r{1, 1.5, 2, 2.5};
    const auto fit = sigma_ratio_fit(m, r);
    CHECK(fit.slope == doctest::Approx(0.5));
    CHECK(fit.intercept == doctest::Approx(0.0));
    CHECK(fit.r_squared == doctest::Approx(1.0));
    CHECK(fit.predict(10) == doctest::Approx(5.0));
    CHECK_THROWS_AS(sigma_ratio_fit(std::vector<double>{3, 3, 3}, std::vector<double>{1, 2, 3}), InsufficientData);
    const auto noisy = sigma_ratio_fit(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 3, 2, 4});
    CHECK(noisy.r_squared > 0.0);
    CHECK(noisy.r_squared < 1.0);
}

TEST_CASE("intervention comparison") {
    WelfareConfig cfg;
    const auto tie = intervention_comparison(cfg, 0.3, 0.3, 5);
    CHECK(tie.choice == Intervention::pool);
    CHECK(tie.net_benefit_audit == 0.0);

    WelfareConfig costly = cfg;
    costly.lambda = 1e6;
    CHECK(intervention_comparison(costly, 0.9, 0.1, 5).choice == Intervention::pool);

    const auto audit = intervention_comparison(cfg, 0.9, 0.1, 5);
    CHECK(audit.choice == Intervention::audit);
    CHECK(audit.net_benefit_audit > 0.0);
    CHECK(audit.net_benefit_audit == audit.net_benefit_audit_no_lambda);

    WelfareConfig priced = cfg;
    priced.lambda = 0.01;
    priced.n_obs = 3;
    priced.supervisory_cost = 0.2;
    const auto d = intervention_comparison(priced, 0.9, 0.1, 4);
    CHECK(d.net_benefit_audit_no_lambda - d.net_benefit_audit == doctest::Approx(0.01 * 3 * 4));
    CHECK(d.loss_pool == doctest::Approx(utility_variance_delta(priced, 0.9) + 0.2));

    const auto none = intervention_comparison(priced, 0.9, 0.8, 4, 0.0);
    CHECK(none.choice == Intervention::none);
    CHECK(none.loss_none.has_value());
    CHECK(to_string(Intervention::audit) == "audit");

    CHECK_THROWS_AS(intervention_comparison(cfg, -0.1, 0.1, 5), DomainError);
    CHECK_THROWS_AS(intervention_comparison(cfg, 0.1, -0.1, 5), DomainError);
}

TEST_CASE("welfare config validation") {
    auto key_of = [](WelfareConfig c) {
        try {
            c.validate();
        } catch (const ConfigError& e) {
            return e.key();
        }
        return std::string();
    };
    WelfareConfig c;
    c.alpha_mean = 1.0;
    CHECK(key_of(c) == "alpha_mean");
    c = {};
    c.lambda = -1;
    CHECK(key_of(c) == "lambda");
    c = {};
    c.confidence = 1.0;
    CHECK(key_of(c) == "confidence");
    CHECK(key_of(WelfareConfig{}).empty());
}

TEST_CASE("welfare pipeline shape") {
    WelfarePipelineConfig cfg;
    cfg.m_min = 2;
    cfg.m_max = 6;
    cfg.replications = 200;
    const auto curve = run_welfare_pipeline(cfg);
    REQUIRE(curve.rows.size() == 5);
    double peak = 0;
    for (const auto& r : curve.rows) peak = std::max(peak, std::fabs(r.net_benefit_no_lambda));
    for (std::size_t k = 0; k < curve.rows.size(); ++k) {
        const auto& r = curve.rows[k];
        CHECK(r.m == 2 + k);
        CHECK(r.sigma_tool > 0);
        CHECK(r.sigma_full > 0);
        CHECK(r.ratio == doctest::Approx(r.sigma_tool / r.sigma_full));
        CHECK(r.fit == doctest::Approx(curve.fit.predict(static_cast<double>(r.m))));
        CHECK(std::fabs(r.normalized_no_lambda) <= 1.0 + 1e-12);
        CHECK(r.normalized_no_lambda == doctest::Approx(r.net_benefit_no_lambda / peak));
        CHECK(r.net_benefit_lambda == r.net_benefit_no_lambda);
    }
    CHECK(run_welfare_pipeline(cfg).rows[3].sigma_tool == curve.rows[3].sigma_tool);
}
