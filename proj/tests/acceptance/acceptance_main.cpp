// Acceptance criteria. Each criterion prints one PASS/FAIL line; the exit
// status is nonzero if any selected criterion fails.
#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracdep/analytic.hpp"
#include "fracdep/estimate.hpp"
#include "fracdep/grid.hpp"
#include "fracdep/quadrature.hpp"
#include "fracdep/rng.hpp"
#include "fracdep/sim.hpp"
#include "fracdep/specfun.hpp"

#ifdef FRACDEP_HAVE_CLI
#include "cli.hpp"
#endif

using namespace fracdep;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool within_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::abs(b);
}

Outcome poisson_reduction() {
    const auto t0 = Clock::now();
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> lam(0.1, 10.0), tm(0.01, 100.0);
    int bad = 0;
    for (int i = 0; i < 20; ++i) {
        const FppParams p{1.0, lam(gen)};
        const double s = tm(gen), t = tm(gen);
        if (!within_rel(analytic::fpp_mean(p, t), p.lambda * t, 1e-12)) ++bad;
        if (!within_rel(analytic::fpp_variance(p, t), p.lambda * t, 1e-12)) ++bad;
        if (!within_rel(analytic::fpp_covariance(p, s, t), p.lambda * std::min(s, t), 1e-12)) ++bad;
        const FpnParams n{p, 0.5};
        const double lo = std::min(s, t);
        if (analytic::fpn_covariance(n, lo, lo + 0.5 + std::abs(t - s)) != 0.0) ++bad;
    }
    for (std::uint64_t n : {1, 2, 5})
        for (std::uint64_t m : {1, 10, 1000})
            if (analytic::delta_statistic({1.0, 2.0}, n, m) != 1.0) ++bad;
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << bad << " mismatches, " << secs << " s";
    return {bad == 0 && secs < 1.0, os.str()};
}

Outcome factorial_moment_oracle() {
    const auto t0 = Clock::now();
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> b(0.05, 1.0), lam(0.1, 5.0), sd(0.0, 10.0), wd(0.01, 20.0);
    const specfun::QuadConfig qc{1e-12, 0.0, 1000};
    int bad = 0;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const FppParams p{b(gen), lam(gen)};
        const double s = sd(gen), t = s + wd(gen), beta = p.beta;
        const double closed = analytic::fpp_increment_factorial_moment(p, s, t);
        const double integral = specfun::adaptive_quad(
            [&](double r) { return std::pow(t - r, beta) * std::pow(r, beta - 1.0); }, s, t, qc);
        const double oracle = 2.0 * beta * p.q() * p.q() * integral;
        const double rel = std::abs(closed - oracle) / oracle;
        worst = std::max(worst, rel);
        if (rel > 1e-8) ++bad;
        const double lower = p.c() * std::pow(t, beta - 1.0) * std::pow(t - s, beta + 1.0);
        const double upper = 2.0 * p.d() * std::pow(t, 2.0 * beta);
        if (closed < lower * (1.0 - 1e-12) || closed > upper * (1.0 + 1e-12)) ++bad;
    }
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << bad << " failures, worst relative error " << worst << ", " << secs << " s";
    return {bad == 0 && secs < 10.0, os.str()};
}

Outcome delta_bounded() {
    const auto t0 = Clock::now();
    std::ostringstream os;
    bool ok = true;
    for (double beta : {0.2, 0.5, 0.8}) {
        for (std::uint64_t n : {2, 3}) {
            const FppParams p{beta, 1.0};
            double last = 0.0;
            for (std::uint64_t m : {10, 100, 1000, 10000, 100000}) last = analytic::delta_statistic(p, n, m);
            const double bound = analytic::delta_bound(p, n);
            const bool cell = last <= bound + 1e-3 && bound <= 1.0;
            ok = ok && cell;
            os << " [beta=" << beta << " n=" << n << " delta(1e5)=" << last << " bound=" << bound
               << (cell ? " ok]" : " exceeds]");
        }
    }
    const double secs = seconds_since(t0);
    os << " " << secs << " s";
    return {ok && secs < 120.0, os.str()};
}

Outcome incomplete_beta_inequality() {
    const auto t0 = Clock::now();
    int bad = 0;
    for (int hi = 1; hi <= 9; ++hi) {
        const double h = hi / 10.0;
        const double rhs = specfun::beta_fn(1.0 + h, h);
        for (int t = 1; t <= 100; ++t) {
            const double lhs = specfun::inc_beta(h, 1.0 + h, 1.0) -
                               specfun::inc_beta(h, 1.0 + h, 1.0 - 1.0 / t);
            if (!(lhs <= rhs)) ++bad;
            if (t >= 2 && !(lhs < rhs)) ++bad;
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << bad << " violations over 900 pairs, " << secs << " s";
    return {bad == 0 && secs < 1.0, os.str()};
}

std::vector<double> fit_grid() { return grid::geometric(100.0, 1e6, 25); }

Outcome fpn_exponent() {
    const auto t0 = Clock::now();
    std::ostringstream os;
    bool ok = true;
    const struct {
        double beta, lo, hi;
    } cases[] = {{0.2, 1.75, 1.85}, {0.3, 1.90, 2.0}};
    for (const auto& c : cases) {
        const ProcessParams pp{c.beta, 1.0, 1.0, 1.0};
        const auto curve = estimate::analytic_correlation(estimate::CurveProcess::Fpn, pp, 1.0, fit_grid(), 1.0);
        const auto fit = estimate::fit_power_law(curve, 100.0);
        const bool cell = fit.d_hat >= c.lo && fit.d_hat <= c.hi && fit.label == analytic::Dependence::SRD;
        ok = ok && cell;
        os << " [beta=" << c.beta << " d_hat=" << fit.d_hat << " target [" << c.lo << ", " << c.hi
           << "] label=" << analytic::to_string(fit.label) << "]";
    }
    const double secs = seconds_since(t0);
    os << " " << secs << " s";
    return {ok && secs < 5.0, os.str()};
}

Outcome fnbp_exponent() {
    const auto t0 = Clock::now();
    std::ostringstream os;
    bool ok = true;
    for (double beta : {0.3, 0.5, 0.7}) {
        const ProcessParams pp{beta, 1.0, 1.0, 1.0};
        const auto curve = estimate::analytic_correlation(estimate::CurveProcess::Fnbp, pp, 1.0, fit_grid(), {});
        const auto fit = estimate::fit_power_law(curve, 100.0);
        const bool cell = std::abs(fit.d_hat - beta) <= 0.05 && fit.label == analytic::Dependence::LRD;
        ok = ok && cell;
        os << " [beta=" << beta << " d_hat=" << fit.d_hat << " " << analytic::to_string(fit.label) << "]";
    }
    const double secs = seconds_since(t0);
    os << " " << secs << " s";
    return {ok && secs < 30.0, os.str()};
}

Outcome fnbn_exponent() {
    const auto t0 = Clock::now();
    std::ostringstream os;
    bool ok = true;
    for (double beta : {0.3, 0.5, 0.7}) {
        const ProcessParams pp{beta, 1.0, 1.0, 1.0};
        const auto curve = estimate::analytic_correlation(estimate::CurveProcess::Fnbn, pp, 1.0, fit_grid(), 1.0);
        const auto fit = estimate::fit_power_law(curve, 100.0);
        const double target = (3.0 - beta) / 2.0;
        const bool cell = std::abs(fit.d_hat - target) <= 0.05 && fit.label == analytic::Dependence::SRD;
        ok = ok && cell;
        os << " [beta=" << beta << " d_hat=" << fit.d_hat << " target=" << target << " "
           << analytic::to_string(fit.label) << "]";
    }
    const double secs = seconds_since(t0);
    os << " " << secs << " s";
    return {ok && secs < 5.0, os.str()};
}

Outcome power_subadditivity() {
    const auto t0 = Clock::now();
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> b(0.0, 1.0), x(0.0, 1000.0);
    int bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const double beta = b(gen);
        double a = x(gen), c = x(gen);
        if (a < c) std::swap(a, c);
        if (std::pow(a - c, beta) < std::pow(a, beta) - std::pow(c, beta) - 1e-12) ++bad;
    }
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << bad << " violations, " << secs << " s";
    return {bad == 0 && secs < 1.0, os.str()};
}

Outcome gamma_product_moments() {
    const FnbpParams p{{0.5, 1.0}, {1.0, 1.0}};
    const double beta = 0.5, s = 1.0;
    const std::uint64_t reps = 1000000;
    std::ostringstream os;
    bool ok = true;
    double prev_gap = INFINITY;
    for (double t : {100.0, 1000.0}) {
        const double denom = specfun::gamma_frac_moment(beta, 1.0, s) * specfun::gamma_frac_moment(beta, 1.0, t - s);
        rng::Engine eng = rng::make_engine({9, static_cast<std::uint64_t>(t)});
        double sum = 0.0, sum2 = 0.0;
        for (std::uint64_t r = 0; r < reps; ++r) {
            const double ys = rng::gamma(eng, 1.0, s);
            const double yt = ys + rng::gamma(eng, 1.0, t - s);
            const double v = std::pow(ys * yt, beta) / denom;
            sum += v;
            sum2 += v * v;
        }
        const double mean = sum / reps;
        const double se = std::sqrt((sum2 / reps - mean * mean) / (reps - 1.0));
        const double exact = analytic::gamma_cross_moment(p, s, t) / denom;
        const double mix = analytic::gamma_beta_mixture(p, s, t) / denom;
        const double gap = std::abs(exact - 1.0);
        const bool cell = std::abs(mean - exact) <= 3.0 * se && gap < prev_gap &&
                          (t < 1000.0 || std::abs(mix - 1.0) <= 0.02);
        ok = ok && cell;
        prev_gap = gap;
        os << " [t=" << t << " mc=" << mean << " se=" << se << " exact=" << exact << " mixture=" << mix << "]";
    }
    return {ok, os.str()};
}

Outcome simulation_cross_validation() {
    const auto t0 = Clock::now();
    std::ostringstream os;
    bool ok = true;
    const ProcessParams pp{0.5, 1.0, 1.0, 1.0};
    const std::vector<double> grid_t{1.0, 5.0, 10.0};
    for (auto kind : {sim::ProcessKind::Fpp, sim::ProcessKind::Fnbp}) {
        const sim::PathSpec spec{kind, pp, grid_t};
        const auto rows = estimate::mc_moments(spec, {100000, {10, 0}, 0});
        for (const auto& r : rows) {
            const bool fpp = kind == sim::ProcessKind::Fpp;
            const double m = fpp ? analytic::fpp_mean(pp.fpp(), r.t) : analytic::fnbp_mean(pp.fnbp(), r.t);
            const double v = fpp ? analytic::fpp_variance(pp.fpp(), r.t) : analytic::fnbp_variance(pp.fnbp(), r.t);
            const double zm = (r.mean.value - m) / r.mean.std_error;
            const double zv = (r.variance.value - v) / r.variance.std_error;
            ok = ok && std::abs(zm) <= 3.0 && std::abs(zv) <= 3.0;
            os << " [" << sim::to_string(kind) << " t=" << r.t << " z_mean=" << zm << " z_var=" << zv << "]";
        }
    }
    for (double beta : {0.3, 0.5, 0.7}) {
        rng::Engine eng = rng::make_engine({10, 1000 + static_cast<std::uint64_t>(beta * 10)});
        const std::vector<double> us{0.5, 1.0, 2.0};
        std::vector<double> sum(us.size(), 0.0), sum2(us.size(), 0.0);
        const std::uint64_t draws = 1000000;
        for (std::uint64_t i = 0; i < draws; ++i) {
            const double x = sim::sample_positive_stable(beta, eng);
            for (std::size_t k = 0; k < us.size(); ++k) {
                const double e = std::exp(-us[k] * x);
                sum[k] += e;
                sum2[k] += e * e;
            }
        }
        for (std::size_t k = 0; k < us.size(); ++k) {
            const double mean = sum[k] / draws;
            const double se = std::sqrt((sum2[k] / draws - mean * mean) / (draws - 1.0));
            const double z = (mean - std::exp(-std::pow(us[k], beta))) / se;
            ok = ok && std::abs(z) <= 3.0;
            os << " [laplace beta=" << beta << " u=" << us[k] << " z=" << z << "]";
        }
    }
    const double secs = seconds_since(t0);
    os << " " << secs << " s";
    return {ok && secs < 300.0, os.str()};
}

Outcome cli_determinism() {
#ifdef FRACDEP_HAVE_CLI
    const std::vector<std::vector<std::string>> commands{
        {"corr", "--process", "fpp", "--mode", "empirical", "--t", "2,5,10", "--reps", "2000"},
        {"corr", "--process", "fnbn", "--delta", "1", "--mode", "empirical", "--t", "3,6", "--reps", "2000"},
        {"classify", "--process", "fnbp", "--mode", "empirical", "--t", "geom:5:50:6", "--t-min", "5", "--reps", "1000"},
        {"simulate", "--process", "fnbp", "--t", "1,2,4", "--reps", "50"},
        {"delta", "--beta", "0.5", "--n", "2", "--m", "1,3", "--empirical", "--reps", "2000"},
    };
    auto data_rows = [](const std::string& text) {
        std::string rows;
        std::istringstream is(text);
        for (std::string line; std::getline(is, line);)
            if (!line.empty() && line[0] != '#') rows += line + "\n";
        return rows;
    };
    int bad = 0;
    std::ostringstream os;
    for (const auto& base : commands) {
        std::string first;
        for (const char* threads : {"1", "8"}) {
            for (int rep = 0; rep < 2; ++rep) {
                auto args = base;
                args.insert(args.end(), {"--seed", "7", "--threads", threads});
                std::istringstream in;
                std::ostringstream out, err;
                const int code = cli::run(args, in, out, err);
                const std::string rows = data_rows(out.str());
                if (code != 0 || rows.empty()) {
                    ++bad;
                    os << " [" << base[0] << " exit " << code << ": " << err.str() << "]";
                } else if (first.empty()) {
                    first = rows;
                } else if (rows != first) {
                    ++bad;
                    os << " [" << base[0] << " differs at threads=" << threads << "]";
                }
            }
        }
    }
    os << " " << bad << " mismatches over " << commands.size() << " commands";
    return {bad == 0, os.str()};
#else
    return {false, "built without the command-line tool"};
#endif
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracdep acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-11); 0 runs all")->check(CLI::Range(0, 11));
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all{
        {1, "Poisson reduction", poisson_reduction},
        {2, "factorial moment vs quadrature and bounds", factorial_moment_oracle},
        {3, "block variance ratio stays bounded", delta_bounded},
        {4, "incomplete beta inequality", incomplete_beta_inequality},
        {5, "FPN exponent in target window", fpn_exponent},
        {6, "FNBP exponent", fnbp_exponent},
        {7, "FNBN exponent", fnbn_exponent},
        {8, "power difference property", power_subadditivity},
        {9, "gamma product moments", gamma_product_moments},
        {10, "simulation cross-validation", simulation_cross_validation},
        {11, "CLI determinism across threads", cli_determinism},
    };
    bool all_ok = true;
    for (const auto& c : all) {
        if (only != 0 && c.id != only) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "):" << o.detail
                  << std::endl;
        all_ok = all_ok && o.pass;
    }
    return all_ok ? 0 : 1;
}
