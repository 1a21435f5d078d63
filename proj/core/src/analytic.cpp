#include "fracdep/analytic.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fracdep/error.hpp"
#include "fracdep/specfun.hpp"

namespace fracdep {

using detail::require_domain;

void FppParams::validate() const {
    require_domain(std::isfinite(beta) && beta > 0.0 && beta <= 1.0,
                   "FPP: beta must satisfy 0 < beta <= 1");
    require_domain(std::isfinite(lambda) && lambda > 0.0, "FPP: lambda must be > 0");
}

double FppParams::q() const { return lambda / std::tgamma(1.0 + beta); }

double FppParams::d() const {
    const double qq = q();
    const double b = std::tgamma(beta) * std::tgamma(1.0 + beta) / std::tgamma(1.0 + 2.0 * beta);
    return beta * qq * qq * b;
}

double FppParams::c() const {
    const double qq = q();
    return 2.0 * beta * qq * qq / (beta + 1.0);
}

double FppParams::R() const {
    const double g = std::tgamma(beta);
    return lambda * lambda / beta * (1.0 / std::tgamma(2.0 * beta) - 1.0 / (beta * g * g));
}

void GammaParams::validate() const {
    require_domain(std::isfinite(alpha) && alpha > 0.0, "gamma subordinator: alpha must be > 0");
    require_domain(std::isfinite(p) && p > 0.0, "gamma subordinator: p must be > 0");
}

void FnbpParams::validate() const {
    fpp.validate();
    gamma.validate();
}

double FnbpParams::eta() const { return fpp.lambda / (gamma.alpha + fpp.lambda); }

double FnbpParams::d1() const {
    return std::pow(gamma.p / gamma.alpha, 2.0 * fpp.beta) * fpp.R();
}

template <class Base>
void NoiseParams<Base>::validate() const {
    base.validate();
    require_domain(std::isfinite(delta) && delta > 0.0, "noise: delta must be > 0");
}

template struct NoiseParams<FppParams>;
template struct NoiseParams<FnbpParams>;

}  // namespace fracdep

namespace fracdep::analytic {

using detail::require_domain;

namespace {

constexpr double kSeriesEps = 1e-17;
constexpr int kSeriesMaxTerms = 400;

void require_time(double t, const char* what) {
    require_domain(std::isfinite(t) && t >= 0.0, what);
}

// beta * sum_{k>=1} (-beta)_k / (k! (beta + k)) x^k, so that
// F(beta; s, t) = (s t)^beta * fpp_F_series(beta, s / t).
double fpp_F_series(double beta, double x) {
    double poch = 1.0;  // (-beta)_k / k!
    double xk = 1.0;
    double sum = 0.0;
    for (int k = 1; k <= kSeriesMaxTerms; ++k) {
        poch *= (k - 1.0 - beta) / k;
        xk *= x;
        const double term = poch * xk / (beta + k);
        sum += term;
        if (poch == 0.0 || std::abs(term) <= kSeriesEps * std::abs(sum)) break;
    }
    return beta * sum;
}

}  // namespace

std::string_view to_string(Dependence d) {
    switch (d) {
        case Dependence::LRD: return "LRD";
        case Dependence::SRD: return "SRD";
        case Dependence::Unclassified: return "UNCLASSIFIED";
    }
    return "UNCLASSIFIED";
}

Dependence classify_exponent(double d) {
    if (d > 0.0 && d < 1.0) return Dependence::LRD;
    if (d > 1.0 && d < 2.0) return Dependence::SRD;
    return Dependence::Unclassified;
}

// ---------------------------------------------------------------- FPP -----

double fpp_mean(const FppParams& p, double t) {
    p.validate();
    require_time(t, "fpp_mean: require t >= 0");
    return p.q() * std::pow(t, p.beta);
}

double fpp_variance(const FppParams& p, double t) {
    p.validate();
    require_time(t, "fpp_variance: require t >= 0");
    const double tb = std::pow(t, p.beta);
    return p.q() * tb + p.R() * tb * tb;
}

double fpp_F(const FppParams& p, double s, double t) {
    p.validate();
    require_domain(std::isfinite(t) && t > 0.0, "fpp_F: require t > 0");
    require_domain(std::isfinite(s) && s >= 0.0 && s <= t, "fpp_F: require 0 <= s <= t");
    if (s == 0.0) return 0.0;
    const double b = p.beta;
    const double x = s / t;
    if (x <= 0.5) return std::pow(s * t, b) * fpp_F_series(b, x);
    return b * std::pow(t, 2.0 * b) * specfun::inc_beta(b, 1.0 + b, x) - std::pow(s * t, b);
}

double fpp_covariance(const FppParams& p, double s, double t) {
    p.validate();
    require_time(s, "fpp_covariance: require s >= 0");
    require_time(t, "fpp_covariance: require t >= 0");
    if (s > t) std::swap(s, t);
    if (s == 0.0) return 0.0;
    if (p.beta == 1.0) return p.lambda * s;  // Poisson
    const double q = p.q();
    const double sb = std::pow(s, p.beta);
    return q * sb + p.d() * sb * sb + q * q * fpp_F(p, s, t);
}

double fpp_correlation(const FppParams& p, double s, double t) {
    require_domain(s > 0.0 && t > 0.0,
                   "fpp_correlation: undefined at time 0 (N(0) = 0 has zero variance)");
    return fpp_covariance(p, s, t) / std::sqrt(fpp_variance(p, s) * fpp_variance(p, t));
}

double fpp_increment_factorial_moment(const FppParams& p, double s, double t) {
    p.validate();
    require_time(s, "fpp_increment_factorial_moment: require s >= 0");
    require_domain(std::isfinite(t) && t >= s,
                   "fpp_increment_factorial_moment: require 0 <= s <= t");
    if (t == s) return 0.0;
    const double b = p.beta;
    const double q = p.q();
    return 2.0 * b * q * q * std::pow(t, 2.0 * b) * specfun::inc_beta_upper(b, 1.0 + b, s / t);
}

double fpp_increment_variance(const FppParams& p, double s, double t) {
    const double fm = fpp_increment_factorial_moment(p, s, t);
    if (p.beta == 1.0) return p.lambda * (t - s);  // Poisson
    const double q = p.q();
    const double mean = q * specfun::power_increment(s, t - s, p.beta);
    return fm + mean - mean * mean;
}

double fpp_theoretical_exponent(const FppParams& p) {
    p.validate();
    return p.beta;
}

// ---------------------------------------------------------------- FPN -----

double fpn_mean(const FpnParams& n, double t) {
    n.validate();
    require_time(t, "fpn_mean: require t >= 0");
    return n.base.q() * specfun::power_increment(t, n.delta, n.base.beta);
}

double fpn_covariance(const FpnParams& n, double s, double t) {
    n.validate();
    require_time(s, "fpn_covariance: require s >= 0");
    require_domain(std::isfinite(t) && t >= s + n.delta,
                   "fpn_covariance: windows overlap, require s + delta <= t");
    const FppParams& p = n.base;
    const double b = p.beta;
    const double q = p.q();
    const double dl = n.delta;
    if (b == 1.0) return 0.0;  // Poisson: independent increments
    const double x = (s + dl) / t;

    if (x > 0.5) {
        return q * q *
               (fpp_F(p, s + dl, t + dl) + fpp_F(p, s, t) - fpp_F(p, s + dl, t) - fpp_F(p, s, t + dl));
    }

    // Four-term combination of the F power series, factored term by term:
    // beta sum_k c_k [(s+dl)^(b+k) - s^(b+k)] [(t+dl)^(b-k) - t^(b-k)].
    const double log_r = s > 0.0 ? std::log(s / (s + dl)) : -std::numeric_limits<double>::infinity();
    const double lt = std::log1p(dl / t);
    double poch = 1.0;
    double xk = 1.0;
    double sum = 0.0;
    for (int k = 1; k <= kSeriesMaxTerms; ++k) {
        poch *= (k - 1.0 - b) / k;
        xk *= x;
        const double lower = -std::expm1((b + k) * log_r);  // 1 - (s/(s+dl))^(b+k)
        const double upper = std::expm1((b - k) * lt);       // (1+dl/t)^(b-k) - 1
        const double term = poch / (b + k) * xk * lower * upper;
        sum += term;
        if (poch == 0.0 || std::abs(term) <= kSeriesEps * std::abs(sum)) break;
    }
    return q * q * b * std::pow((s + dl) * t, b) * sum;
}

AsymptoticValue fpn_covariance_asymptotic(const FpnParams& n, double s, double t) {
    n.validate();
    require_time(s, "fpn_covariance_asymptotic: require s >= 0");
    require_domain(t > s + n.delta, "fpn_covariance_asymptotic: require t > s + delta");
    const double b = n.base.beta;
    const double q = n.base.q();
    const double k = b * q * q * n.delta * specfun::power_increment(s, n.delta, b + 1.0);
    const double e = -(b + 2.0);
    return {k * std::pow(t, e), e, k, "reference form K t^-(beta+2); not the exact decay rate"};
}

AsymptoticValue fpn_covariance_leading_order(const FpnParams& n, double s, double t) {
    n.validate();
    require_time(s, "fpn_covariance_leading_order: require s >= 0");
    require_domain(t > s + n.delta, "fpn_covariance_leading_order: require t > s + delta");
    const double b = n.base.beta;
    const double q = n.base.q();
    const double k = q * q * b * b * (1.0 - b) * n.delta / (b + 1.0) *
                     specfun::power_increment(s, n.delta, b + 1.0);
    const double e = b - 2.0;
    return {k * std::pow(t, e), e, k, "leading term for t >> s + delta; zero at beta = 1"};
}

double fpn_variance(const FpnParams& n, double t) {
    n.validate();
    require_time(t, "fpn_variance: require t >= 0");
    return fpp_increment_variance(n.base, t, t + n.delta);
}

AsymptoticValue fpn_variance_asymptotic(const FpnParams& n, double t) {
    n.validate();
    require_domain(t > 0.0, "fpn_variance_asymptotic: require t > 0");
    const double b = n.base.beta;
    const double k = b * n.delta * n.base.q();
    const double e = b - 1.0;
    return {k * std::pow(t, e), e, k, "reference form beta delta q t^(beta-1); not certified below t = 10 delta"};
}

AsymptoticValue fpn_variance_leading_order(const FpnParams& n, double t) {
    n.validate();
    require_domain(t > 0.0, "fpn_variance_leading_order: require t > 0");
    const double b = n.base.beta;
    const double q = n.base.q();
    const double k = b * n.delta * q + 2.0 * b * q * q * std::pow(n.delta, b + 1.0) / (b + 1.0);
    const double e = b - 1.0;
    return {k * std::pow(t, e), e, k, "leading term for t >> delta and beta < 1"};
}

double fpn_correlation(const FpnParams& n, double s, double t) {
    const double cov = fpn_covariance(n, s, t);
    return cov / std::sqrt(fpn_variance(n, s) * fpn_variance(n, t));
}

double fpn_theoretical_exponent(const FpnParams& n) {
    n.validate();
    return 1.5 * (n.base.beta + 1.0);
}

double fpn_leading_exponent(const FpnParams& n) {
    n.validate();
    return 0.5 * (3.0 - n.base.beta);
}

// --------------------------------------------------- block variance ratio -

double delta_statistic(const FppParams& p, std::uint64_t n, std::uint64_t m) {
    p.validate();
    require_domain(n >= 1 && m >= 1, "delta_statistic: require n >= 1 and m >= 1");
    const double hi = static_cast<double>(n * m);
    const double lo = static_cast<double>((n - 1) * m);
    const double numerator = fpp_increment_variance(p, lo, hi);

    // Neumaier summation of the unit-increment variances.
    double sum = 0.0;
    double comp = 0.0;
    for (std::uint64_t j = (n - 1) * m + 1; j <= n * m; ++j) {
        const double jd = static_cast<double>(j);
        const double v = fpp_increment_variance(p, jd - 1.0, jd);
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    const double denominator = sum + comp;
    if (!(denominator > std::numeric_limits<double>::min()) || !std::isfinite(numerator)) {
        std::ostringstream os;
        os << "delta_statistic: denominator " << denominator << " unusable for n=" << n
           << ", m=" << m;
        throw NumericalError(os.str());
    }
    return numerator / denominator;
}

double delta_bound(const FppParams& p, std::uint64_t n) {
    p.validate();
    require_domain(n >= 1, "delta_bound: require n >= 1");
    const double nd = static_cast<double>(n);
    const double c1 = specfun::power_diff(nd, p.beta);
    return c1 * c1 / specfun::power_diff(nd, 2.0 * p.beta);
}

}  // namespace fracdep::analytic
