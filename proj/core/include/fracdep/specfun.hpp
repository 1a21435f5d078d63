#pragma once

#include <cstdint>

#include "fracdep/quadrature.hpp"

// Special functions used by the analytic formulas. Everything here is pure
// and safe to call concurrently.
namespace fracdep::specfun {

/// ln Gamma(x) for finite x > 0.
[[nodiscard]] double log_gamma(double x);

/// ln Gamma(x + h) - ln Gamma(x), accurate to a few ulps of the result even
/// when x is large and the individual log-gamma values are not.
[[nodiscard]] double log_gamma_ratio(double x, double h);

/// ln B(a, b).
[[nodiscard]] double log_beta(double a, double b);

/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b). Symmetric in its arguments
/// bit-for-bit.
[[nodiscard]] double beta_fn(double a, double b);

/// Unregularized lower incomplete beta: integral_0^x u^(a-1) (1-u)^(b-1) du.
/// inc_beta(a, b, 1) == beta_fn(a, b) exactly.
[[nodiscard]] double inc_beta(double a, double b, double x);

/// Upper tail integral_x^1 u^(a-1) (1-u)^(b-1) du, computed without forming
/// beta_fn(a, b) - inc_beta(a, b, x) when that difference is small.
[[nodiscard]] double inc_beta_upper(double a, double b, double x);

/// Regularized I_x(a, b) = inc_beta(a, b, x) / beta_fn(a, b).
[[nodiscard]] double inc_beta_regularized(double a, double b, double x);

/// E[Y^m] for Y ~ Gamma(rate = alpha, shape = shape):
/// Gamma(shape + m) / (alpha^m Gamma(shape)).
[[nodiscard]] double gamma_frac_moment(double m, double alpha, double shape);

/// C(x, y) = x^y - (x - 1)^y for x >= 1.
[[nodiscard]] double power_diff(double x, double y);

/// (x + h)^y - x^y for x >= 0, h >= 0, free of cancellation when h << x.
[[nodiscard]] double power_increment(double x, double h, double y);

/// Binomial coefficient with real upper argument,
/// Gamma(top + 1) / (Gamma(k + 1) Gamma(top - k + 1)).
[[nodiscard]] double gen_binom(double top, std::uint64_t k);
[[nodiscard]] double log_gen_binom(double top, std::uint64_t k);

/// E[ sum_{j >= first_term} (1-b)_j / j! * W^(a+j) / (a+j) ] for
/// W ~ Beta(shape1, shape2).
///
/// With first_term == 0 this is E[inc_beta(a, b, W)]; larger values drop the
/// leading terms of the power series of the incomplete beta, which is how
/// callers avoid subtracting nearly equal quantities. Uses the moment series
/// when it converges quickly and falls back to adaptive quadrature against
/// the Beta density otherwise.
[[nodiscard]] double expected_inc_beta(double a, double b, double shape1, double shape2,
                                       int first_term = 0, const QuadConfig& cfg = {});

}  // namespace fracdep::specfun
