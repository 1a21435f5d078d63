#include <catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "fracdep/analytic.hpp"
#include "fracdep/error.hpp"
#include "fracdep/estimate.hpp"
#include "fracdep/grid.hpp"

using namespace fracdep;
using namespace fracdep::estimate;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("power-law fit recovers an exact curve", "[estimate]") {
    CorrelationCurve c{1.0, std::nullopt, {}, Source::Analytic};
    for (double t : grid::geometric(10.0, 1e4, 12)) c.points.push_back({t, 2.0 * std::pow(t, -0.7), {}});
    const auto fit = fit_power_law(c, 10.0);
    CHECK_THAT(fit.d_hat, WithinAbs(0.7, 1e-12));
    CHECK_THAT(fit.c_hat, WithinRel(2.0, 1e-12));
    CHECK_THAT(fit.r_squared, WithinAbs(1.0, 1e-12));
    CHECK(fit.points_used == 12);
    CHECK(fit.label == analytic::Dependence::LRD);

    const auto cut = fit_power_law(c, 100.0);
    CHECK(cut.points_used < 12);
    CHECK_THROWS_AS(fit_power_law(c, 5e3), InsufficientDataError);
}

TEST_CASE("power-law fit drops points under the floor", "[estimate]") {
    CorrelationCurve c{1.0, std::nullopt, {}, Source::Empirical};
    for (double t : grid::geometric(10.0, 1e3, 8)) c.points.push_back({t, std::pow(t, -1.5), 1e-6});
    c.points.push_back({2e3, 1e-6, 1e-6});
    const auto fit = fit_power_law(c, 10.0);
    CHECK(fit.points_used == 8);
    CHECK_THAT(fit.d_hat, WithinAbs(1.5, 1e-12));
    CHECK(fit.label == analytic::Dependence::SRD);
}

TEST_CASE("analytic curves fit their exponents", "[estimate]") {
    const auto grid_t = grid::geometric(100.0, 1e6, 25);
    SECTION("fpp") {
        const ProcessParams pp{0.5, 1.0, 1.0, 1.0};
        const auto fit = fit_power_law(analytic_correlation(CurveProcess::Fpp, pp, 1.0, grid_t, {}), 100.0);
        CHECK_THAT(fit.d_hat, WithinAbs(0.5, 0.01));
        CHECK(fit.label == analytic::Dependence::LRD);
    }
    SECTION("fnbp") {
        const ProcessParams pp{0.4, 1.0, 1.0, 1.0};
        const auto fit = fit_power_law(analytic_correlation(CurveProcess::Fnbp, pp, 1.0, grid_t, {}), 100.0);
        CHECK(std::abs(fit.d_hat - 0.4) < 0.05);
        CHECK(fit.label == analytic::Dependence::LRD);
    }
    SECTION("fnbn asymptotic form is an exact power law") {
        const ProcessParams pp{0.5, 1.0, 1.0, 1.0};
        const auto fit = fit_power_law(analytic_correlation(CurveProcess::Fnbn, pp, 1.0, grid_t, 1.0), 100.0);
        CHECK_THAT(fit.d_hat, WithinAbs(1.25, 1e-9));
        CHECK(fit.label == analytic::Dependence::SRD);
        CHECK(theoretical_exponent(CurveProcess::Fnbn, pp, 1.0) == 1.25);
    }
    SECTION("fpn exact curve follows (3 - beta) / 2") {
        const ProcessParams pp{0.3, 1.0, 1.0, 1.0};
        const auto fit = fit_power_law(analytic_correlation(CurveProcess::Fpn, pp, 1.0, grid_t, 1.0), 100.0);
        CHECK(std::abs(fit.d_hat - 1.35) < 0.05);
        CHECK_THAT(theoretical_exponent(CurveProcess::Fpn, pp, 1.0), WithinAbs(1.95, 1e-15));
    }
}

TEST_CASE("curve arguments are validated", "[estimate]") {
    const ProcessParams pp{0.5, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(analytic_correlation(CurveProcess::Fpn, pp, 1.0, {10.0}, std::nullopt), DomainError);
    CHECK_THROWS_AS(analytic_correlation(CurveProcess::Fpp, pp, 0.0, {10.0}, std::nullopt), DomainError);
    CHECK(default_t_min(1.0, std::nullopt) == 100.0);
    CHECK(default_t_min(1.0, 2.0) == 200.0);
}

TEST_CASE("Monte Carlo moments of the FPP", "[estimate]") {
    const ProcessParams pp{0.6, 2.0, 1.0, 1.0};
    const sim::PathSpec spec{sim::ProcessKind::Fpp, pp, {1.0, 3.0}, sim::default_stable_step(0.6, 3.0) * 5.0};
    const auto rows = mc_moments(spec, {20000, {3, 0}, 0});
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        INFO("t=" << r.t);
        CHECK(std::abs(r.mean.value - analytic::fpp_mean(pp.fpp(), r.t)) < 3.5 * r.mean.std_error);
        CHECK(std::abs(r.variance.value - analytic::fpp_variance(pp.fpp(), r.t)) < 3.5 * r.variance.std_error);
    }
}

TEST_CASE("Monte Carlo correlation of the FPP", "[estimate]") {
    const ProcessParams pp{0.5, 1.0, 1.0, 1.0};
    const sim::PathSpec spec{sim::ProcessKind::Fpp, pp, {}, sim::default_stable_step(0.5, 10.0) * 5.0};
    const std::vector<double> ts{5.0, 10.0};
    const auto curve = mc_correlation(spec, 1.0, ts, std::nullopt, {10000, {4, 0}, 0});
    REQUIRE(curve.points.size() == 2);
    CHECK(curve.source == Source::Empirical);
    for (const auto& p : curve.points) {
        REQUIRE(p.std_error);
        CHECK(std::abs(p.corr - analytic::fpp_correlation(pp.fpp(), 1.0, p.t)) < 3.5 * *p.std_error);
    }
    CHECK_THROWS_AS(mc_correlation(spec, 1.0, ts, std::nullopt, {50, {4, 0}, 0}), DomainError);
    CHECK_THROWS_AS(mc_correlation(spec, 6.0, ts, std::nullopt, {1000, {4, 0}, 0}), DomainError);
}

TEST_CASE("Monte Carlo results do not depend on the thread count", "[estimate]") {
    const sim::PathSpec spec{sim::ProcessKind::Fnbp, {0.5, 1.0, 1.0, 1.0}, {}, 1e-2};
    const auto a = mc_correlation(spec, 1.0, {3.0, 6.0}, 1.0, {400, {9, 0}, 1});
    const auto b = mc_correlation(spec, 1.0, {3.0, 6.0}, 1.0, {400, {9, 0}, 8});
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        CHECK(a.points[i].corr == b.points[i].corr);
        CHECK(*a.points[i].std_error == *b.points[i].std_error);
    }
}

TEST_CASE("bootstrap standard error shrinks like 1 / sqrt(reps)", "[estimate]") {
    const sim::PathSpec spec{sim::ProcessKind::Poisson, {1.0, 1.0, 1.0, 1.0}, {}};
    const auto small = mc_correlation(spec, 1.0, {4.0}, std::nullopt, {2000, {10, 0}, 0});
    const auto large = mc_correlation(spec, 1.0, {4.0}, std::nullopt, {32000, {10, 0}, 0});
    const double ratio = *small.points[0].std_error / *large.points[0].std_error;
    CHECK(ratio > 2.8);
    CHECK(ratio < 5.6);
    // Poisson: Corr[N(1), N(4)] = 1/2.
    CHECK(std::abs(large.points[0].corr - 0.5) < 3.5 * *large.points[0].std_error);
}

TEST_CASE("block variance ratio tables", "[estimate]") {
    const FppParams p{0.5, 1.0};
    const auto t = delta_analytic(p, 2, {1, 10, 100});
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].value == 1.0);
    CHECK_THAT(t.rows[1].value, WithinRel(1.8805448025189552, 1e-12));
    CHECK(t.rows[2].value > t.rows[1].value);
    CHECK_THROWS_AS(delta_analytic(p, 0, {1}), DomainError);

    const auto e = delta_empirical({1.0, 1.0}, 2, {5}, {4000, {11, 0}, 0});
    REQUIRE(e.rows[0].std_error);
    CHECK(std::abs(e.rows[0].value - 1.0) < 3.5 * *e.rows[0].std_error);

    const auto f = delta_empirical(p, 2, {4}, {4000, {12, 0}, 0}, 1e-2);
    const double exact = analytic::delta_statistic(p, 2, 4);
    CHECK(std::abs(f.rows[0].value - exact) < 3.5 * *f.rows[0].std_error);
    CHECK_THROWS_AS(delta_empirical(p, 2, {4}, {100, {12, 0}, 0}), DomainError);
}
