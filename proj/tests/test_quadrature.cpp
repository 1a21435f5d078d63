#include <catch_amalgamated.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "fracdep/error.hpp"
#include "fracdep/quadrature.hpp"

using namespace fracdep;
using namespace fracdep::specfun;
using Catch::Matchers::WithinRel;

TEST_CASE("smooth integrands", "[quadrature]") {
    CHECK_THAT(adaptive_quad([](double x) { return std::sin(x); }, 0.0, std::numbers::pi),
               WithinRel(2.0, 1e-12));
    CHECK_THAT(adaptive_quad([](double x) { return std::exp(-x * x); }, -6.0, 6.0),
               WithinRel(std::sqrt(std::numbers::pi), 1e-12));
    CHECK_THAT(adaptive_quad([](double x) { return x * x * x; }, 0.0, 2.0), WithinRel(4.0, 1e-14));
}

TEST_CASE("integrable endpoint singularities", "[quadrature]") {
    CHECK_THAT(adaptive_quad([](double u) { return 1.0 / std::sqrt(u); }, 0.0, 1.0),
               WithinRel(2.0, 1e-9));
    // B(0.3, 1.3) = integral of u^-0.7 (1-u)^0.3
    CHECK_THAT(adaptive_quad([](double u) { return std::pow(u, -0.7) * std::pow(1.0 - u, 0.3); }, 0.0, 1.0),
               WithinRel(3.0048118418655073671, 1e-8));
}

TEST_CASE("reports its error estimate and work", "[quadrature]") {
    const auto r = adaptive_quad_detailed([](double x) { return std::cos(x); }, 0.0, 1.0);
    CHECK_THAT(r.value, WithinRel(std::sin(1.0), 1e-13));
    CHECK(r.error >= 0.0);
    CHECK(r.evaluations > 0);
}

TEST_CASE("quadrature errors", "[quadrature]") {
    CHECK_THROWS_AS(adaptive_quad([](double) { return 1.0; }, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(adaptive_quad([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0, 1.0),
                    NumericalError);
    QuadConfig tight;
    tight.rel_tol = 1e-15;
    tight.abs_tol = 0.0;
    tight.max_depth = 2;
    CHECK_THROWS_AS(adaptive_quad([](double u) { return std::pow(u, -0.9); }, 0.0, 1.0, tight),
                    ConvergenceError);
    QuadConfig bad;
    bad.rel_tol = -1.0;
    CHECK_THROWS_AS(adaptive_quad([](double x) { return x; }, 0.0, 1.0, bad), DomainError);
}
