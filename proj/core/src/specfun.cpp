#include "fracdep/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "fracdep/error.hpp"

namespace fracdep::specfun {

namespace {

using detail::require_domain;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

// Tail of the Stirling series, sum B_2k / (2k (2k-1) z^(2k-1)).
double stirling_tail(double z) {
    static constexpr std::array<double, 7> c = {
        1.0 / 12.0,     -1.0 / 360.0,          1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0,   -691.0 / 360360.0,     1.0 / 156.0};
    const double zi = 1.0 / z;
    const double z2 = zi * zi;
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z2 + *it;
    return acc * zi;
}

// Continued fraction for the incomplete beta (modified Lentz). Converges
// quickly for x < (a + 1) / (a + b + 2).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 20000;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= kEps) return h;
    }
    std::ostringstream os;
    os << "inc_beta: continued fraction did not converge for a=" << a << ", b=" << b
       << ", x=" << x;
    throw ConvergenceError(os.str());
}

// integral_0^x u^(a-1)(1-u)^(b-1) du evaluated directly by the continued
// fraction; accurate when x is on the small side of the mean.
double lower_direct(double a, double b, double x) {
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x));
    return front * beta_cf(a, b, x) / a;
}

bool use_lower_direct(double a, double b, double x) {
    return x < (a + 1.0) / (a + b + 2.0);
}

void check_inc_beta_args(double a, double b, double x) {
    require_domain(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b),
                   "inc_beta: require a > 0 and b > 0");
    require_domain(x >= 0.0 && x <= 1.0, "inc_beta: require 0 <= x <= 1");
}

}  // namespace

double log_gamma(double x) {
    require_domain(std::isfinite(x) && x > 0.0, "log_gamma: require finite x > 0");
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double log_gamma_ratio(double x, double h) {
    require_domain(std::isfinite(x) && std::isfinite(h) && x > 0.0 && x + h > 0.0,
                   "log_gamma_ratio: require x > 0 and x + h > 0");
    if (h == 0.0) return 0.0;
    const double lo = std::min(x, x + h);
    if (lo < 20.0) return log_gamma(x + h) - log_gamma(x);
    return (x - 0.5) * std::log1p(h / x) + h * std::log(x + h) - h +
           (stirling_tail(x + h) - stirling_tail(x));
}

double log_beta(double a, double b) {
    require_domain(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b),
                   "beta_fn: require a > 0 and b > 0");
    const double small = std::min(a, b);
    const double large = std::max(a, b);
    return log_gamma(small) - log_gamma_ratio(large, small);
}

double beta_fn(double a, double b) { return std::exp(log_beta(a, b)); }

double inc_beta(double a, double b, double x) {
    check_inc_beta_args(a, b, x);
    if (x == 0.0) return 0.0;
    if (x == 1.0) return beta_fn(a, b);
    if (use_lower_direct(a, b, x)) return lower_direct(a, b, x);
    return beta_fn(a, b) - lower_direct(b, a, 1.0 - x);
}

double inc_beta_upper(double a, double b, double x) {
    check_inc_beta_args(a, b, x);
    if (x == 1.0) return 0.0;
    if (x == 0.0) return beta_fn(a, b);
    if (!use_lower_direct(a, b, x)) return lower_direct(b, a, 1.0 - x);
    return beta_fn(a, b) - lower_direct(a, b, x);
}

double inc_beta_regularized(double a, double b, double x) {
    return inc_beta(a, b, x) / beta_fn(a, b);
}

double gamma_frac_moment(double m, double alpha, double shape) {
    require_domain(m > 0.0 && alpha > 0.0 && shape > 0.0 && std::isfinite(m) &&
                       std::isfinite(alpha) && std::isfinite(shape),
                   "gamma_frac_moment: require m > 0, alpha > 0, shape > 0");
    return std::exp(log_gamma_ratio(shape, m) - m * std::log(alpha));
}

double power_diff(double x, double y) {
    require_domain(std::isfinite(x) && std::isfinite(y) && x >= 1.0,
                   "power_diff: require finite x >= 1 and finite y");
    if (x == 1.0) return y == 0.0 ? 0.0 : 1.0;
    return -std::pow(x, y) * std::expm1(y * std::log1p(-1.0 / x));
}

double power_increment(double x, double h, double y) {
    require_domain(std::isfinite(x) && std::isfinite(h) && std::isfinite(y) && x >= 0.0 &&
                       h >= 0.0,
                   "power_increment: require finite x >= 0, h >= 0");
    if (h == 0.0 || y == 0.0) return 0.0;
    if (x == 0.0) return std::pow(h, y);
    return std::pow(x, y) * std::expm1(y * std::log1p(h / x));
}

double log_gen_binom(double top, std::uint64_t k) {
    const double kd = static_cast<double>(k);
    require_domain(std::isfinite(top) && top + 1.0 > 0.0 && top - kd + 1.0 > 0.0,
                   "gen_binom: gamma arguments top+1 and top-k+1 must be positive");
    return log_gamma_ratio(top - kd + 1.0, kd) - log_gamma(kd + 1.0);
}

double gen_binom(double top, std::uint64_t k) {
    if (k == 0) {
        require_domain(std::isfinite(top) && top + 1.0 > 0.0,
                       "gen_binom: gamma argument top+1 must be positive");
        return 1.0;
    }
    return std::exp(log_gen_binom(top, k));
}

double expected_inc_beta(double a, double b, double shape1, double shape2, int first_term,
                         const QuadConfig& cfg) {
    require_domain(a > 0.0 && b > 0.0 && shape1 > 0.0 && shape2 > 0.0 && first_term >= 0,
                   "expected_inc_beta: require positive parameters");

    // Power series: inc_beta(a, b, w) = sum_j (1-b)_j / j! w^(a+j) / (a+j),
    // with Beta moments E[W^(a+j)] from their ratio recursion.
    {
        constexpr int kMaxTerms = 4000;
        double coef = 1.0;
        double moment =
            std::exp(log_gamma_ratio(shape1, a) - log_gamma_ratio(shape1 + shape2, a));
        double sum = 0.0;
        double compensation = 0.0;
        bool converged = false;
        for (int j = 0; j < kMaxTerms; ++j) {
            const double term = coef * moment / (a + j);
            if (j >= first_term) {
                const double y = term - compensation;
                const double t = sum + y;
                compensation = (t - sum) - y;
                sum = t;
            }
            const double coef_next = coef * (j + 1.0 - b) / (j + 1.0);
            const double moment_next = moment * (shape1 + a + j) / (shape1 + shape2 + a + j);
            if (coef_next == 0.0 || moment_next == 0.0) {
                converged = true;  // terminating series
                break;
            }
            if (j >= first_term) {
                const double ratio = std::abs(coef_next / coef) * (moment_next / moment) *
                                     (a + j) / (a + j + 1.0);
                if (ratio < 1.0 && std::abs(term) * ratio / (1.0 - ratio) <=
                                       0.25 * kEps * std::abs(sum)) {
                    converged = true;
                    break;
                }
            }
            coef = coef_next;
            moment = moment_next;
        }
        if (converged) return sum;
    }

    // Quadrature against the Beta(shape1, shape2) density, split at 1/2. An
    // endpoint with shape < 1 is integrable-singular; the substitution
    // w = u^(1/shape) turns it into a bounded integrand.
    std::vector<double> dropped;
    {
        double coef = 1.0;
        for (int j = 0; j < first_term; ++j) {
            dropped.push_back(coef / (a + j));
            coef *= (j + 1.0 - b) / (j + 1.0);
        }
    }
    const auto g = [&](double w) {
        double v = inc_beta(a, b, w);
        for (std::size_t j = 0; j < dropped.size(); ++j) {
            v -= dropped[j] * std::pow(w, a + static_cast<double>(j));
        }
        return v;
    };
    const double lb = log_beta(shape1, shape2);
    const double mean = shape1 / (shape1 + shape2);
    const double sd = std::sqrt(shape1 * shape2 /
                                ((shape1 + shape2) * (shape1 + shape2) * (shape1 + shape2 + 1.0)));

    double total = 0.0;
    // Lower half [0, 1/2].
    if (shape1 < 1.0) {
        const double upper = std::pow(0.5, shape1);
        total += adaptive_quad(
            [&](double u) {
                const double w = std::pow(u, 1.0 / shape1);
                return g(w) * std::exp((shape2 - 1.0) * std::log1p(-w) - lb) / shape1;
            },
            0.0, upper, cfg);
    }
    // Upper half [1/2, 1] in terms of v = 1 - w.
    if (shape2 < 1.0) {
        const double upper = std::pow(0.5, shape2);
        total += adaptive_quad(
            [&](double u) {
                const double v = std::pow(u, 1.0 / shape2);
                return g(1.0 - v) * std::exp((shape1 - 1.0) * std::log1p(-v) - lb) / shape2;
            },
            0.0, upper, cfg);
    }
    // Remaining regular pieces, with breakpoints around the bulk of the density.
    std::vector<double> cuts;
    const double lo = shape1 < 1.0 ? 0.5 : 0.0;
    const double hi = shape2 < 1.0 ? 0.5 : 1.0;
    if (lo < hi) {
        cuts.push_back(lo);
        for (double k : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
            const double c = mean + k * sd;
            if (c > lo && c < hi) cuts.push_back(c);
        }
        if (0.5 > lo && 0.5 < hi) cuts.push_back(0.5);
        cuts.push_back(hi);
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        const auto integrand = [&](double w) {
            return g(w) *
                   std::exp((shape1 - 1.0) * std::log(w) + (shape2 - 1.0) * std::log1p(-w) - lb);
        };
        QuadConfig piece = cfg;
        piece.abs_tol = std::max(cfg.abs_tol, 1e-300);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            total += adaptive_quad(integrand, cuts[i], cuts[i + 1], piece);
        }
    }
    return total;
}

}  // namespace fracdep::specfun
