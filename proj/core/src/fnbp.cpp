// Negative binomial family: the FNBP Q(t) = N_beta(Y(t)) and its increments.
#include <cmath>
#include <cstdint>
#include <sstream>
#include <utility>

#include "fracdep/analytic.hpp"
#include "fracdep/error.hpp"
#include "fracdep/specfun.hpp"

namespace fracdep::analytic {

using detail::require_domain;

namespace {

// E[Y(t)^m]; zero at t = 0.
double gamma_moment(const FnbpParams& p, double m, double t) {
    if (t == 0.0) return 0.0;
    return specfun::gamma_frac_moment(m, p.gamma.alpha, p.gamma.p * t);
}

// beta E[Y^(2b)(t) B(b, 1+b; V)] - E[Y^b(s)] E[Y^b(t)] with V = Y(s)/Y(t),
// assembled from pieces that never subtract quantities of size t^(2b).
double mixed_term(const FnbpParams& p, double s, double t, const specfun::QuadConfig& cfg) {
    const double b = p.fpp.beta;
    const double alpha = p.gamma.alpha;
    const double shape_s = p.gamma.p * s;
    const double shape_t = p.gamma.p * t;
    const double m1s = gamma_moment(p, b, s);
    if (s == t) {
        const double m1 = gamma_moment(p, b, t);
        return b * specfun::beta_fn(b, 1.0 + b) * gamma_moment(p, 2.0 * b, t) - m1 * m1;
    }
    // E[V^b] E[Y^(2b)(t)] - E[Y^b(s)] E[Y^b(t)]
    //   = E[Y^b(s)] alpha^-b (g(n + b) - g(n)),  g(x) = Gamma(x + b) / Gamma(x).
    const double log_g = specfun::log_gamma_ratio(shape_t, b);
    const double second_diff =
        specfun::log_gamma_ratio(shape_t + b, b) - specfun::log_gamma_ratio(shape_t, b);
    const double cross = m1s * std::pow(alpha, -b) * std::exp(log_g) * std::expm1(second_diff);
    // beta E[B(b, 1+b; V) - V^b / b] via the series with its leading term removed.
    const double tail =
        b * specfun::expected_inc_beta(b, 1.0 + b, shape_s, shape_t - shape_s, 1, cfg);
    return gamma_moment(p, 2.0 * b, t) * tail + cross;
}

void require_positive_time(double t, const char* what) {
    require_domain(std::isfinite(t) && t > 0.0, what);
}

}  // namespace

// --------------------------------------------------------------- FNBP -----

double nb_pmf(const FnbpParams& p, std::uint64_t n, double t) {
    p.validate();
    require_positive_time(t, "nb_pmf: require t > 0");
    const double shape = p.gamma.p * t;
    const double lam = p.fpp.lambda;
    const double alpha = p.gamma.alpha;
    const double nd = static_cast<double>(n);
    const double log_binom = n == 0 ? 0.0 : specfun::log_gen_binom(nd + shape - 1.0, n);
    return std::exp(log_binom + nd * std::log(lam / (alpha + lam)) +
                    shape * std::log(alpha / (alpha + lam)));
}

double fnbp_mean(const FnbpParams& p, double t) {
    p.validate();
    require_domain(std::isfinite(t) && t >= 0.0, "fnbp_mean: require t >= 0");
    return p.fpp.q() * gamma_moment(p, p.fpp.beta, t);
}

double fnbp_variance(const FnbpParams& p, double t) {
    p.validate();
    require_domain(std::isfinite(t) && t >= 0.0, "fnbp_variance: require t >= 0");
    if (t == 0.0) return 0.0;
    const double b = p.fpp.beta;
    const double q = p.fpp.q();
    const double shape = p.gamma.p * t;
    const double m1 = gamma_moment(p, b, t);
    const double m2 = gamma_moment(p, 2.0 * b, t);
    // q m1 (1 - q m1) + 2 d m2 rewritten as q m1 + R m2 + q^2 (m2 - m1^2).
    const double spread = m1 * m1 *
                          std::expm1(specfun::log_gamma_ratio(shape + b, b) -
                                     specfun::log_gamma_ratio(shape, b));
    const double v = q * m1 + p.fpp.R() * m2 + q * q * spread;
    if (!(v >= 0.0)) {
        std::ostringstream os;
        os << "fnbp_variance: formula gave " << v << " at t=" << t;
        throw NumericalError(os.str());
    }
    return v;
}

double fnbp_covariance(const FnbpParams& p, double s, double t, const specfun::QuadConfig& cfg) {
    p.validate();
    require_positive_time(s, "fnbp_covariance: require 0 < s <= t");
    require_domain(std::isfinite(t) && t >= s, "fnbp_covariance: require 0 < s <= t");
    if (s == t) return fnbp_variance(p, t);
    const double q = p.fpp.q();
    return fnbp_covariance_limit(p, s) + q * q * mixed_term(p, s, t, cfg);
}

double fnbp_correlation(const FnbpParams& p, double s, double t, const specfun::QuadConfig& cfg) {
    require_domain(s > 0.0 && t > 0.0, "fnbp_correlation: undefined at time 0");
    if (s > t) std::swap(s, t);
    if (s == t) return 1.0;
    return fnbp_covariance(p, s, t, cfg) / std::sqrt(fnbp_variance(p, s) * fnbp_variance(p, t));
}

double fnbp_covariance_limit(const FnbpParams& p, double s) {
    p.validate();
    require_domain(std::isfinite(s) && s >= 0.0, "fnbp_covariance_limit: require s >= 0");
    const double b = p.fpp.beta;
    return p.fpp.q() * gamma_moment(p, b, s) + p.fpp.d() * gamma_moment(p, 2.0 * b, s);
}

double fnbp_theoretical_exponent(const FnbpParams& p) {
    p.validate();
    return p.fpp.beta;
}

double gamma_cross_moment(const FnbpParams& p, double s, double t) {
    p.validate();
    require_positive_time(s, "gamma_cross_moment: require 0 < s <= t");
    require_domain(std::isfinite(t) && t >= s, "gamma_cross_moment: require 0 < s <= t");
    const double b = p.fpp.beta;
    const double shape_t = p.gamma.p * t;
    // E[V^b] E[Y^(2b)(t)] with V = Y(s)/Y(t) independent of Y(t).
    return gamma_moment(p, b, s) * std::pow(p.gamma.alpha, -b) *
           std::exp(specfun::log_gamma_ratio(shape_t + b, b));
}

double gamma_beta_mixture(const FnbpParams& p, double s, double t,
                          const specfun::QuadConfig& cfg) {
    p.validate();
    require_positive_time(s, "gamma_beta_mixture: require 0 < s < t");
    require_domain(std::isfinite(t) && t > s, "gamma_beta_mixture: require 0 < s < t");
    const double b = p.fpp.beta;
    const double shape_s = p.gamma.p * s;
    const double shape_t = p.gamma.p * t;
    return b * gamma_moment(p, 2.0 * b, t) *
           specfun::expected_inc_beta(b, 1.0 + b, shape_s, shape_t - shape_s, 0, cfg);
}

// --------------------------------------------------------------- FNBN -----

double fnbn_mean(const FnbnParams& n, double t) {
    n.validate();
    require_domain(std::isfinite(t) && t >= 0.0, "fnbn_mean: require t >= 0");
    const FnbpParams& p = n.base;
    const double b = p.fpp.beta;
    if (t == 0.0) return fnbp_mean(p, n.delta);
    const double shape = p.gamma.p * t;
    const double shape_next = p.gamma.p * (t + n.delta);
    const double m1 = gamma_moment(p, b, t);
    return p.fpp.q() * m1 *
           std::expm1(specfun::log_gamma_ratio(shape_next, b) - specfun::log_gamma_ratio(shape, b));
}

double fnbn_variance(const FnbnParams& n, double t, const specfun::QuadConfig& cfg) {
    n.validate();
    require_domain(std::isfinite(t) && t >= 0.0, "fnbn_variance: require t >= 0");
    const FnbpParams& p = n.base;
    if (t == 0.0) return fnbp_variance(p, n.delta);
    const double b = p.fpp.beta;
    const double q = p.fpp.q();
    const double mean = fnbn_mean(n, t);
    // E[(Q(t+dl) - Q(t))^2] = q dM1 + 2 beta q^2 E[Y^(2b)(t+dl)] E[B(1+b, b; 1 - V)],
    // where 1 - V = (Y(t+dl) - Y(t)) / Y(t+dl) ~ Beta(p dl, p t).
    const double upper = specfun::expected_inc_beta(1.0 + b, b, p.gamma.p * n.delta,
                                                    p.gamma.p * t, 0, cfg);
    const double second = mean + 2.0 * b * q * q * gamma_moment(p, 2.0 * b, t + n.delta) * upper;
    const double v = second - mean * mean;
    if (!(v >= 0.0)) {
        std::ostringstream os;
        os << "fnbn_variance: formula gave " << v << " at t=" << t;
        throw NumericalError(os.str());
    }
    return v;
}

double fnbn_covariance(const FnbnParams& n, double s, double t, const specfun::QuadConfig& cfg) {
    n.validate();
    require_positive_time(s, "fnbn_covariance: require s > 0");
    require_domain(std::isfinite(t) && t >= s + n.delta,
                   "fnbn_covariance: windows overlap, require s + delta <= t");
    const FnbpParams& p = n.base;
    const double q = p.fpp.q();
    const double dl = n.delta;
    // The s-only terms of the four FNBP covariances cancel exactly.
    return q * q *
           (mixed_term(p, s + dl, t + dl, cfg) + mixed_term(p, s, t, cfg) -
            mixed_term(p, s + dl, t, cfg) - mixed_term(p, s, t + dl, cfg));
}

double fnbn_correlation(const FnbnParams& n, double s, double t, const specfun::QuadConfig& cfg) {
    const double cov = fnbn_covariance(n, s, t, cfg);
    return cov / std::sqrt(fnbn_variance(n, s, cfg) * fnbn_variance(n, t, cfg));
}

FnbnAsymptotics fnbn_asymptotics(const FnbnParams& n, double s, double t) {
    n.validate();
    require_domain(std::isfinite(s) && s >= 0.0, "fnbn_asymptotics: require s >= 0");
    require_domain(std::isfinite(t) && t >= s + n.delta,
                   "fnbn_asymptotics: require s + delta <= t");
    const FnbpParams& p = n.base;
    const double b = p.fpp.beta;
    const double q = p.fpp.q();
    const double dl = n.delta;
    const double ratio = std::pow(p.gamma.p / p.gamma.alpha, b);

    FnbnAsymptotics out;
    const double cov_pref = q * q * dl * ratio * b * (1.0 - b) *
                            ((s + dl) * gamma_moment(p, b, s + dl) - s * gamma_moment(p, b, s));
    out.cov = {cov_pref * std::pow(t, b - 2.0), b - 2.0, cov_pref,
               "reference large-t form; exponent matches the exact covariance"};
    const double var_pref = b * dl * q * ratio;
    out.var = {var_pref * std::pow(t, b - 1.0), b - 1.0, var_pref,
               "reference large-t form; exponent matches the exact variance"};
    out.corr_exponent = 0.5 * (3.0 - b);
    return out;
}

AsymptoticValue fnbn_correlation_asymptotic(const FnbnParams& n, double s, double t) {
    const FnbnAsymptotics a = fnbn_asymptotics(n, s, t);
    const double pref = a.cov.prefactor / std::sqrt(fnbn_variance(n, s) * a.var.prefactor);
    const double e = -a.corr_exponent;
    return {pref * std::pow(t, e), e, pref, "asymptotic covariance over asymptotic variance"};
}

double fnbn_theoretical_exponent(const FnbnParams& n) {
    n.validate();
    return 0.5 * (3.0 - n.base.fpp.beta);
}

}  // namespace fracdep::analytic
