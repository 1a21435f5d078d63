#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "fracdep/params.hpp"
#include "fracdep/quadrature.hpp"

// Exact and asymptotic second-order structure of the fractional Poisson
// process (FPP), its increments (FPN), the fractional negative binomial
// process (FNBP) and its increments (FNBN).
namespace fracdep::analytic {

/// Leading-order term prefactor * t^exponent of a large-t expansion.
struct AsymptoticValue {
    double value = 0.0;
    double exponent = 0.0;
    double prefactor = 0.0;
    std::string validity_note;
};

enum class Dependence { LRD, SRD, Unclassified };

[[nodiscard]] std::string_view to_string(Dependence d);

/// LRD iff d in (0, 1), SRD iff d in (1, 2); open intervals.
[[nodiscard]] Dependence classify_exponent(double d);

// ---------------------------------------------------------------- FPP -----

[[nodiscard]] double fpp_mean(const FppParams& p, double t);
[[nodiscard]] double fpp_variance(const FppParams& p, double t);

/// F(beta; s, t) = beta t^(2 beta) B(beta, 1 + beta; s/t) - (s t)^beta, 0 <= s <= t.
[[nodiscard]] double fpp_F(const FppParams& p, double s, double t);

/// Cov[N(s), N(t)]; arguments are symmetrized.
[[nodiscard]] double fpp_covariance(const FppParams& p, double s, double t);

/// Corr[N(s), N(t)]. Throws DomainError if either time is 0.
[[nodiscard]] double fpp_correlation(const FppParams& p, double s, double t);

/// E[(N(t) - N(s)) (N(t) - N(s) - 1)], closed incomplete-beta form.
[[nodiscard]] double fpp_increment_factorial_moment(const FppParams& p, double s, double t);

/// Var[N(t) - N(s)] for 0 <= s <= t, from the factorial moment and the mean.
[[nodiscard]] double fpp_increment_variance(const FppParams& p, double s, double t);

/// Large-t correlation exponent of the FPP itself (beta).
[[nodiscard]] double fpp_theoretical_exponent(const FppParams& p);

// ---------------------------------------------------------------- FPN -----

[[nodiscard]] double fpn_mean(const FpnParams& n, double t);

/// Cov[Z(s), Z(t)] for disjoint windows, s + delta <= t.
[[nodiscard]] double fpn_covariance(const FpnParams& n, double s, double t);

/// Reference large-t form K t^-(beta+2), K = beta q^2 delta ((s+delta)^(beta+1) - s^(beta+1)).
/// Does not match fpn_covariance; see fpn_covariance_leading_order.
[[nodiscard]] AsymptoticValue fpn_covariance_asymptotic(const FpnParams& n, double s, double t);

/// Leading term of the exact covariance:
/// q^2 beta^2 (1 - beta) delta ((s+delta)^(beta+1) - s^(beta+1)) / (beta + 1) * t^(beta-2).
[[nodiscard]] AsymptoticValue fpn_covariance_leading_order(const FpnParams& n, double s,
                                                           double t);

[[nodiscard]] double fpn_variance(const FpnParams& n, double t);

/// Reference large-t form beta delta q t^(beta-1).
[[nodiscard]] AsymptoticValue fpn_variance_asymptotic(const FpnParams& n, double t);

/// Leading term of the exact variance:
/// (beta delta q + 2 beta q^2 delta^(beta+1) / (beta+1)) t^(beta-1).
[[nodiscard]] AsymptoticValue fpn_variance_leading_order(const FpnParams& n, double t);

[[nodiscard]] double fpn_correlation(const FpnParams& n, double s, double t);

/// 3 (beta + 1) / 2, the reference decay rate.
[[nodiscard]] double fpn_theoretical_exponent(const FpnParams& n);

/// (3 - beta) / 2, the decay rate of the exact correlation.
[[nodiscard]] double fpn_leading_exponent(const FpnParams& n);

// --------------------------------------------------- block variance ratio -

/// Delta_n^(m) = Var[N(nm) - N((n-1)m)] / sum_{j=(n-1)m+1}^{nm} Var[N(j) - N(j-1)].
/// O(m) per call.
[[nodiscard]] double delta_statistic(const FppParams& p, std::uint64_t n, std::uint64_t m);

/// C(n, beta)^2 / C(n, 2 beta) with C(x, y) = x^y - (x-1)^y.
[[nodiscard]] double delta_bound(const FppParams& p, std::uint64_t n);

// --------------------------------------------------------------- FNBP -----

/// P[Q(t) = n] for the (non-fractional) negative binomial process: NB(p t, eta).
[[nodiscard]] double nb_pmf(const FnbpParams& p, std::uint64_t n, double t);

[[nodiscard]] double fnbp_mean(const FnbpParams& p, double t);

/// Throws NumericalError if cancellation yields a negative value.
[[nodiscard]] double fnbp_variance(const FnbpParams& p, double t);

/// Cov[Q(s), Q(t)]; the mixed term uses the independence of Y(s)/Y(t) ~
/// Beta(ps, p(t-s)) and Y(t).
[[nodiscard]] double fnbp_covariance(const FnbpParams& p, double s, double t,
                                     const specfun::QuadConfig& cfg = {});

[[nodiscard]] double fnbp_correlation(const FnbpParams& p, double s, double t,
                                      const specfun::QuadConfig& cfg = {});

/// q E[Y^beta(s)] + d E[Y^(2 beta)(s)], the limit of Cov[Q(s), Q(t)] as t grows.
[[nodiscard]] double fnbp_covariance_limit(const FnbpParams& p, double s);

/// beta.
[[nodiscard]] double fnbp_theoretical_exponent(const FnbpParams& p);

/// E[Y^beta(s) Y^beta(t)] in closed form, s <= t.
[[nodiscard]] double gamma_cross_moment(const FnbpParams& p, double s, double t);

/// beta E[Y^(2 beta)(t) B(beta, 1 + beta; Y(s)/Y(t))], s < t.
[[nodiscard]] double gamma_beta_mixture(const FnbpParams& p, double s, double t,
                                        const specfun::QuadConfig& cfg = {});

// --------------------------------------------------------------- FNBN -----

[[nodiscard]] double fnbn_mean(const FnbnParams& n, double t);

/// Exact four-term combination of FNBP covariances, s + delta <= t.
[[nodiscard]] double fnbn_covariance(const FnbnParams& n, double s, double t,
                                     const specfun::QuadConfig& cfg = {});

/// Exact Var[Q(t + delta) - Q(t)].
[[nodiscard]] double fnbn_variance(const FnbnParams& n, double t,
                                   const specfun::QuadConfig& cfg = {});

[[nodiscard]] double fnbn_correlation(const FnbnParams& n, double s, double t,
                                      const specfun::QuadConfig& cfg = {});

struct FnbnAsymptotics {
    AsymptoticValue cov;
    AsymptoticValue var;
    double corr_exponent = 0.0;
};

/// Reference large-t forms: covariance ~ t^(beta-2), variance ~ t^(beta-1),
/// correlation ~ t^-((3-beta)/2).
[[nodiscard]] FnbnAsymptotics fnbn_asymptotics(const FnbnParams& n, double s, double t);

/// Correlation built from the asymptotic covariance, the asymptotic variance
/// at t and the exact variance at s.
[[nodiscard]] AsymptoticValue fnbn_correlation_asymptotic(const FnbnParams& n, double s,
                                                          double t);

/// (3 - beta) / 2.
[[nodiscard]] double fnbn_theoretical_exponent(const FnbnParams& n);

}  // namespace fracdep::analytic
