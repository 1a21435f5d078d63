#include "fracdep/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "fracdep/error.hpp"

namespace fracdep::estimate {

using detail::require_domain;

std::string to_string(Source s) { return s == Source::Analytic ? "analytic" : "empirical"; }

std::string to_string(CurveProcess p) {
    switch (p) {
        case CurveProcess::Fpp: return "fpp";
        case CurveProcess::Fpn: return "fpn";
        case CurveProcess::Fnbp: return "fnbp";
        case CurveProcess::Fnbn: return "fnbn";
    }
    return "unknown";
}

namespace {

// Neumaier compensated sum.
class Sum {
public:
    void add(double v) {
        const double t = sum_ + v;
        comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
        sum_ = t;
    }
    [[nodiscard]] double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Upper bound on stored per-replication values.
constexpr std::uint64_t kMaxStoredValues = 100'000'000;

void check_storage(std::uint64_t reps, std::uint64_t per_rep, const char* who) {
    if (per_rep != 0 && reps > kMaxStoredValues / per_rep) {
        std::ostringstream os;
        os << who << ": " << reps << " replications x " << per_rep
           << " values exceeds the storage cap of " << kMaxStoredValues;
        throw ResourceError(os.str());
    }
}

std::vector<double> merge_times(std::vector<double> times) {
    std::sort(times.begin(), times.end());
    std::vector<double> out;
    for (double t : times)
        if (out.empty() || sim::find_time(out, t) < 0) out.push_back(t);
    return out;
}

// Pearson correlation between column x and column y over the given row indices.
double pearson(const std::vector<double>& x, const std::vector<double>& y,
               const std::vector<std::uint64_t>* rows) {
    const std::size_t n = rows ? rows->size() : x.size();
    auto at = [&](const std::vector<double>& v, std::size_t i) {
        return rows ? v[(*rows)[i]] : v[i];
    };
    Sum sx, sy;
    for (std::size_t i = 0; i < n; ++i) {
        sx.add(at(x, i));
        sy.add(at(y, i));
    }
    const double mx = sx.value() / static_cast<double>(n);
    const double my = sy.value() / static_cast<double>(n);
    Sum sxx, syy, sxy;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = at(x, i) - mx;
        const double dy = at(y, i) - my;
        sxx.add(dx * dx);
        syy.add(dy * dy);
        sxy.add(dx * dy);
    }
    const double den = std::sqrt(sxx.value() * syy.value());
    if (!(den > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return sxy.value() / den;
}

double variance_of(const std::vector<double>& v) {
    Sum s;
    for (double x : v) s.add(x);
    const double m = s.value() / static_cast<double>(v.size());
    Sum ss;
    for (double x : v) ss.add((x - m) * (x - m));
    return ss.value() / static_cast<double>(v.size() - 1);
}

}  // namespace

std::vector<MomentRow> mc_moments(const sim::PathSpec& spec, const McConfig& cfg) {
    spec.validate();
    require_domain(cfg.reps >= 2, "mc_moments: require reps >= 2");
    const std::size_t g = spec.t_grid.size();
    check_storage(cfg.reps, g, "mc_moments");
    std::vector<double> values(cfg.reps * g);
    sim::parallel_for(cfg.reps, cfg.threads, [&](std::uint64_t r) {
        const auto path = sim::sample_process_path(spec, {cfg.seed.root, r});
        std::copy(path.values.begin(), path.values.end(), values.begin() + r * g);
    });

    const double n = static_cast<double>(cfg.reps);
    std::vector<MomentRow> out(g);
    for (std::size_t j = 0; j < g; ++j) {
        Sum s;
        for (std::uint64_t r = 0; r < cfg.reps; ++r) s.add(values[r * g + j]);
        const double mean = s.value() / n;
        Sum s2, s4;
        for (std::uint64_t r = 0; r < cfg.reps; ++r) {
            const double d = values[r * g + j] - mean;
            s2.add(d * d);
            s4.add(d * d * d * d);
        }
        const double var = s2.value() / (n - 1.0);
        const double m2 = s2.value() / n;
        const double m4 = s4.value() / n;
        out[j].t = spec.t_grid[j];
        out[j].mean = {mean, std::sqrt(var / n), cfg.reps};
        out[j].variance = {var, std::sqrt(std::max(0.0, m4 - m2 * m2) / n), cfg.reps};
    }
    return out;
}

CorrelationCurve mc_correlation(const sim::PathSpec& spec, double s,
                                const std::vector<double>& t_grid, std::optional<double> delta,
                                const McConfig& cfg) {
    require_domain(cfg.reps >= 100, "mc_correlation: require reps >= 100");
    require_domain(std::isfinite(s) && s > 0.0, "mc_correlation: require s > 0");
    if (t_grid.empty()) throw GridError("mc_correlation: empty t grid");
    const double dl = delta.value_or(0.0);
    require_domain(!delta || (std::isfinite(dl) && dl > 0.0), "mc_correlation: require delta > 0");
    require_domain(s < t_grid.front() && s + dl <= t_grid.front(),
                   "mc_correlation: s (and s + delta) must lie below the smallest t");

    std::vector<double> times{s};
    if (delta) times.push_back(s + dl);
    for (double t : t_grid) {
        times.push_back(t);
        if (delta) times.push_back(t + dl);
    }
    sim::PathSpec run = spec;
    run.t_grid = merge_times(times);
    run.validate();

    auto value_at = [&](const sim::SamplePath& path, double t) {
        const auto i = sim::find_time(path.times, t);
        if (!delta) return path.values[i];
        return path.values[sim::find_time(path.times, t + dl)] - path.values[i];
    };

    const std::size_t g = t_grid.size();
    check_storage(cfg.reps, g + 1, "mc_correlation");
    std::vector<double> xs(cfg.reps);
    std::vector<std::vector<double>> xt(g, std::vector<double>(cfg.reps));
    sim::parallel_for(cfg.reps, cfg.threads, [&](std::uint64_t r) {
        const auto path = sim::sample_process_path(run, {cfg.seed.root, r});
        xs[r] = value_at(path, s);
        for (std::size_t j = 0; j < g; ++j) xt[j][r] = value_at(path, t_grid[j]);
    });
    if (!(variance_of(xs) > 0.0))
        throw NumericalError("mc_correlation: sample variance at s is zero");

    CorrelationCurve curve{s, delta, {}, Source::Empirical};
    for (std::size_t j = 0; j < g; ++j) {
        const double c = pearson(xs, xt[j], nullptr);
        if (!std::isfinite(c)) {
            std::ostringstream os;
            os << "mc_correlation: sample variance at t=" << t_grid[j] << " is zero";
            throw NumericalError(os.str());
        }
        curve.points.push_back({t_grid[j], c, std::nullopt});
    }

    // Bootstrap: resample b draws its indices from its own stream.
    std::vector<double> boot(static_cast<std::size_t>(kBootstrapResamples) * g);
    sim::parallel_for(kBootstrapResamples, cfg.threads, [&](std::uint64_t b) {
        rng::Engine eng = rng::make_engine({cfg.seed.root, kBootstrapStream - b});
        std::uniform_int_distribution<std::uint64_t> pick(0, cfg.reps - 1);
        std::vector<std::uint64_t> rows(cfg.reps);
        for (auto& i : rows) i = pick(eng);
        for (std::size_t j = 0; j < g; ++j) boot[b * g + j] = pearson(xs, xt[j], &rows);
    });
    for (std::size_t j = 0; j < g; ++j) {
        std::vector<double> col;
        col.reserve(kBootstrapResamples);
        for (unsigned b = 0; b < kBootstrapResamples; ++b)
            if (std::isfinite(boot[b * g + j])) col.push_back(boot[b * g + j]);
        if (col.size() >= 2) curve.points[j].std_error = std::sqrt(variance_of(col));
    }
    return curve;
}

CorrelationCurve analytic_correlation(CurveProcess process, const ProcessParams& params, double s,
                                      const std::vector<double>& t_grid,
                                      std::optional<double> delta, bool fnbn_asymptotic,
                                      const specfun::QuadConfig& qcfg) {
    if (t_grid.empty()) throw GridError("analytic_correlation: empty t grid");
    const bool noise = process == CurveProcess::Fpn || process == CurveProcess::Fnbn;
    require_domain(!noise || delta.has_value(),
                   "analytic_correlation: " + to_string(process) + " needs delta");
    CorrelationCurve curve{s, noise ? delta : std::nullopt, {}, Source::Analytic};
    for (double t : t_grid) {
        double c = 0.0;
        switch (process) {
            case CurveProcess::Fpp: c = analytic::fpp_correlation(params.fpp(), s, t); break;
            case CurveProcess::Fpn:
                c = analytic::fpn_correlation({params.fpp(), *delta}, s, t);
                break;
            case CurveProcess::Fnbp:
                c = analytic::fnbp_correlation(params.fnbp(), s, t, qcfg);
                break;
            case CurveProcess::Fnbn: {
                const FnbnParams n{params.fnbp(), *delta};
                c = fnbn_asymptotic ? analytic::fnbn_correlation_asymptotic(n, s, t).value
                                    : analytic::fnbn_correlation(n, s, t, qcfg);
                break;
            }
        }
        curve.points.push_back({t, c, std::nullopt});
    }
    return curve;
}

double theoretical_exponent(CurveProcess process, const ProcessParams& params,
                            std::optional<double> delta) {
    const double dl = delta.value_or(1.0);
    switch (process) {
        case CurveProcess::Fpp: return analytic::fpp_theoretical_exponent(params.fpp());
        case CurveProcess::Fpn: return analytic::fpn_theoretical_exponent({params.fpp(), dl});
        case CurveProcess::Fnbp: return analytic::fnbp_theoretical_exponent(params.fnbp());
        case CurveProcess::Fnbn: return analytic::fnbn_theoretical_exponent({params.fnbp(), dl});
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double default_t_min(double s, std::optional<double> delta) {
    return 100.0 * std::max(s, delta.value_or(0.0));
}

ExponentFit fit_power_law(const CorrelationCurve& curve, double t_min_cutoff) {
    std::vector<double> x;
    std::vector<double> y;
    std::size_t above_cutoff = 0;
    for (const auto& pt : curve.points) {
        if (!(pt.t >= t_min_cutoff) || !(pt.t > 0.0)) continue;
        ++above_cutoff;
        double floor = 1e-12;
        if (curve.source == Source::Empirical && pt.std_error) floor = std::max(floor, 2.0 * *pt.std_error);
        const double a = std::abs(pt.corr);
        if (!std::isfinite(a) || !(a > floor)) continue;
        x.push_back(std::log(pt.t));
        y.push_back(std::log(a));
    }
    if (x.size() < 5) {
        std::ostringstream os;
        os << "fit_power_law: " << x.size() << " usable points (need 5); " << above_cutoff
           << " of " << curve.points.size() << " points have t >= " << t_min_cutoff;
        if (above_cutoff >= 5) os << ", the rest fall below the correlation floor";
        throw InsufficientDataError(os.str());
    }
    const double n = static_cast<double>(x.size());
    Sum sx, sy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx.add(x[i]);
        sy.add(y[i]);
    }
    const double mx = sx.value() / n;
    const double my = sy.value() / n;
    Sum sxx, sxy, syy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx.add((x[i] - mx) * (x[i] - mx));
        sxy.add((x[i] - mx) * (y[i] - my));
        syy.add((y[i] - my) * (y[i] - my));
    }
    if (!(sxx.value() > 0.0)) throw InsufficientDataError("fit_power_law: all t values coincide");
    const double slope = sxy.value() / sxx.value();
    const double intercept = my - slope * mx;
    Sum sres;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (intercept + slope * x[i]);
        sres.add(r * r);
    }
    ExponentFit fit;
    fit.d_hat = -slope;
    fit.c_hat = std::exp(intercept);
    fit.r_squared = syy.value() > 0.0 ? std::clamp(1.0 - sres.value() / syy.value(), 0.0, 1.0) : 1.0;
    fit.label = analytic::classify_exponent(fit.d_hat);
    fit.points_used = x.size();
    fit.d_std_error = std::sqrt(sres.value() / (n - 2.0) / sxx.value());
    return fit;
}

DeltaTable delta_analytic(const FppParams& params, std::uint64_t n,
                          const std::vector<std::uint64_t>& m_values) {
    DeltaTable table{n, {}, Source::Analytic};
    for (auto m : m_values) table.rows.push_back({m, analytic::delta_statistic(params, n, m), std::nullopt});
    return table;
}

DeltaTable delta_empirical(const FppParams& params, std::uint64_t n,
                           const std::vector<std::uint64_t>& m_values, const McConfig& cfg,
                           double stable_step) {
    params.validate();
    require_domain(n >= 1, "delta_empirical: require n >= 1");
    require_domain(cfg.reps >= 1000, "delta_empirical: require reps >= 1000");
    require_domain(!m_values.empty(), "delta_empirical: no m values");
    std::set<std::uint64_t> points;
    for (auto m : m_values) {
        require_domain(m >= 1, "delta_empirical: require m >= 1");
        for (std::uint64_t j = (n - 1) * m; j <= n * m; ++j) points.insert(j);
    }
    const std::vector<std::uint64_t> grid(points.begin(), points.end());
    sim::PathSpec spec;
    spec.process = sim::ProcessKind::Fpp;
    spec.params = {params.beta, params.lambda, 1.0, 1.0};
    spec.stable_step = stable_step;
    for (auto j : grid) spec.t_grid.push_back(static_cast<double>(j));
    spec.validate();

    const std::size_t g = grid.size();
    check_storage(cfg.reps, g, "delta_empirical");
    std::vector<std::uint32_t> counts(cfg.reps * g);
    sim::parallel_for(cfg.reps, cfg.threads, [&](std::uint64_t r) {
        const auto path = sim::sample_process_path(spec, {cfg.seed.root, r});
        for (std::size_t i = 0; i < g; ++i) counts[r * g + i] = static_cast<std::uint32_t>(path.values[i]);
    });
    auto index_of = [&](std::uint64_t j) {
        return static_cast<std::size_t>(std::lower_bound(grid.begin(), grid.end(), j) - grid.begin());
    };

    const std::uint64_t reps = cfg.reps;
    const double rd = static_cast<double>(reps);
    DeltaTable table{n, {}, Source::Empirical};
    for (auto m : m_values) {
        const std::size_t lo = index_of((n - 1) * m);
        const std::size_t hi = index_of(n * m);
        auto c = [&](std::uint64_t r, std::size_t i) { return static_cast<double>(counts[r * g + i]); };

        std::vector<double> x(reps);
        Sum sx;
        for (std::uint64_t r = 0; r < reps; ++r) {
            x[r] = c(r, hi) - c(r, lo);
            sx.add(x[r]);
        }
        const double mx = sx.value() / rd;
        std::vector<double> mu(hi - lo, 0.0);
        for (std::size_t i = lo + 1; i <= hi; ++i) {
            Sum su;
            for (std::uint64_t r = 0; r < reps; ++r) su.add(c(r, i) - c(r, i - 1));
            mu[i - lo - 1] = su.value() / rd;
        }
        // Per-replication squared deviations of the numerator and the summed unit increments.
        std::vector<double> a(reps);
        std::vector<double> b(reps);
        Sum sa, sb;
        for (std::uint64_t r = 0; r < reps; ++r) {
            a[r] = (x[r] - mx) * (x[r] - mx);
            Sum row;
            for (std::size_t i = lo + 1; i <= hi; ++i) {
                const double d = c(r, i) - c(r, i - 1) - mu[i - lo - 1];
                row.add(d * d);
            }
            b[r] = row.value();
            sa.add(a[r]);
            sb.add(b[r]);
        }
        const double num = sa.value() / (rd - 1.0);
        const double den = sb.value() / (rd - 1.0);
        if (!(den > 0.0)) throw NumericalError("delta_empirical: unit-increment variances are all zero");
        const double ratio = num / den;
        const double ma = sa.value() / rd;
        const double mb = sb.value() / rd;
        Sum sif;
        for (std::uint64_t r = 0; r < reps; ++r) {
            const double inf = ((a[r] - ma) - ratio * (b[r] - mb)) / mb;
            sif.add(inf * inf);
        }
        table.rows.push_back({m, ratio, std::sqrt(sif.value() / (rd - 1.0) / rd)});
    }
    return table;
}

}  // namespace fracdep::estimate
