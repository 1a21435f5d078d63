#include "fracdep/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "fracdep/error.hpp"
#include "stable_batch.hpp"

namespace fracdep::sim {

using fracdep::detail::require_domain;

std::string to_string(ProcessKind k) {
    switch (k) {
        case ProcessKind::Poisson: return "poisson";
        case ProcessKind::Gamma: return "gamma";
        case ProcessKind::InverseStable: return "inv_stable";
        case ProcessKind::Fpp: return "fpp";
        case ProcessKind::NegativeBinomial: return "nb";
        case ProcessKind::Fnbp: return "fnbp";
    }
    return "unknown";
}

namespace {

void require_grid(const std::vector<double>& g, const char* who) {
    if (g.empty()) throw GridError(std::string(who) + ": empty time grid");
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!std::isfinite(g[i]) || g[i] < 0.0)
            throw GridError(std::string(who) + ": times must be finite and >= 0");
        if (i > 0 && !(g[i] > g[i - 1]))
            throw GridError(std::string(who) + ": times must be strictly increasing");
    }
}

bool needs_clock(ProcessKind k) {
    return k == ProcessKind::InverseStable || k == ProcessKind::Fpp || k == ProcessKind::Fnbp;
}

bool uses_gamma(ProcessKind k) {
    return k == ProcessKind::Gamma || k == ProcessKind::NegativeBinomial ||
           k == ProcessKind::Fnbp;
}

// Cumulative Poisson counts N(levels[i]) for nondecreasing levels.
std::vector<double> poisson_compose(double lambda, const std::vector<double>& levels,
                                    rng::Engine& eng) {
    std::vector<double> out(levels.size());
    double prev = 0.0;
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        count += rng::poisson(eng, lambda * (levels[i] - prev));
        prev = levels[i];
        out[i] = static_cast<double>(count);
    }
    return out;
}

}  // namespace

void PathSpec::validate() const {
    const FnbpParams fp = params.fnbp();
    switch (process) {
        case ProcessKind::Poisson:
            require_domain(params.lambda > 0.0 && std::isfinite(params.lambda),
                           "poisson: require lambda > 0");
            break;
        case ProcessKind::Gamma: fp.gamma.validate(); break;
        case ProcessKind::InverseStable: fp.fpp.validate(); break;
        case ProcessKind::Fpp: fp.fpp.validate(); break;
        case ProcessKind::NegativeBinomial:
            fp.gamma.validate();
            require_domain(params.lambda > 0.0 && std::isfinite(params.lambda),
                           "nb: require lambda > 0");
            break;
        case ProcessKind::Fnbp: fp.validate(); break;
    }
    require_grid(t_grid, "PathSpec");
    require_domain(stable_step >= 0.0 && std::isfinite(stable_step),
                   "PathSpec: stable_step must be > 0 (or 0 for the default)");
    require_domain(max_stable_steps > 0, "PathSpec: max_stable_steps must be positive");
}

double PathSpec::clock_horizon() const {
    const double t_max = t_grid.empty() ? 0.0 : t_grid.back();
    if (process == ProcessKind::Fnbp) return params.p * t_max / params.alpha;
    return t_max;
}

double PathSpec::resolved_stable_step() const {
    if (stable_step > 0.0) return stable_step;
    return default_stable_step(params.beta, clock_horizon());
}

double default_stable_step(double beta, double horizon) {
    require_domain(beta > 0.0 && beta <= 1.0, "default_stable_step: require 0 < beta <= 1");
    require_domain(std::isfinite(horizon) && horizon >= 0.0,
                   "default_stable_step: require horizon >= 0");
    const double h = std::max(horizon, std::numeric_limits<double>::min());
    return std::pow(h, beta) / (std::tgamma(1.0 + beta) * 1e4);
}

double sample_positive_stable(double beta, rng::Engine& eng) {
    require_domain(beta > 0.0 && beta < 1.0, "sample_positive_stable: require 0 < beta < 1");
    constexpr double pi = std::numbers::pi;
    const double v = rng::uniform_open01(eng);
    const double w = rng::exponential(eng);
    // Kanter: S = (A(V) / W)^((1 - beta) / beta) with
    // A(v) = (sin(beta pi v) / sin(pi v))^(1 / (1 - beta)) sin((1 - beta) pi v) / sin(beta pi v).
    const double sb = std::sin(beta * pi * v);
    const double log_s = std::log(sb / std::sin(pi * v)) / beta +
                         (1.0 - beta) / beta * std::log(std::sin((1.0 - beta) * pi * v) / (sb * w));
    return std::exp(log_s);
}

double sample_inverse_stable_marginal(double beta, double t, rng::Engine& eng) {
    require_domain(beta > 0.0 && beta <= 1.0,
                   "sample_inverse_stable_marginal: require 0 < beta <= 1");
    require_domain(std::isfinite(t) && t >= 0.0, "sample_inverse_stable_marginal: require t >= 0");
    if (t == 0.0) return 0.0;
    if (beta == 1.0) return t;
    return std::pow(t / sample_positive_stable(beta, eng), beta);
}

std::vector<double> inverse_stable_at(double beta, const std::vector<double>& levels,
                                      double stable_step, rng::Engine& eng,
                                      std::uint64_t max_steps) {
    require_domain(beta > 0.0 && beta <= 1.0, "inverse_stable_at: require 0 < beta <= 1");
    require_domain(stable_step > 0.0 && std::isfinite(stable_step),
                   "inverse_stable_at: require stable_step > 0");
    std::vector<double> out(levels.size());
    if (beta == 1.0) {
        std::copy(levels.begin(), levels.end(), out.begin());
        return out;
    }
    const double scale = std::pow(stable_step, 1.0 / beta);
    // Increments are drawn in blocks; those left over once the last level is
    // passed are discarded, which does not change the law of the path.
    constexpr std::size_t kBlock = 256;
    std::array<double, kBlock> v{}, u{}, inc{};
    std::size_t next = kBlock;
    double d = 0.0;
    std::uint64_t k = 0;
    double prev_level = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double level = levels[i];
        require_domain(std::isfinite(level) && level >= prev_level,
                       "inverse_stable_at: levels must be finite, >= 0 and nondecreasing");
        prev_level = level;
        if (level == 0.0) {
            out[i] = 0.0;
            continue;
        }
        while (d <= level) {
            if (k >= max_steps) {
                std::ostringstream os;
                os << "inverse-stable path needs more than " << max_steps
                   << " steps to pass level " << level << " (stable_step=" << stable_step
                   << "); raise the cap or the step";
                throw ResourceError(os.str());
            }
            if (next == kBlock) {
                for (std::size_t j = 0; j < kBlock; ++j) {
                    v[j] = rng::uniform_open01(eng);
                    u[j] = rng::uniform_open01(eng);
                }
                sim::detail::positive_stable_batch(beta, v.data(), u.data(), inc.data(), kBlock);
                next = 0;
            }
            d += scale * inc[next++];
            ++k;
        }
        out[i] = static_cast<double>(k) * stable_step;
    }
    return out;
}

SamplePath sample_inverse_stable_path(double beta, const std::vector<double>& t_grid,
                                      double stable_step, rng::Engine& eng,
                                      std::uint64_t max_steps) {
    require_grid(t_grid, "sample_inverse_stable_path");
    return {t_grid, inverse_stable_at(beta, t_grid, stable_step, eng, max_steps)};
}

SamplePath sample_gamma_path(const GammaParams& g, const std::vector<double>& t_grid,
                             rng::Engine& eng) {
    g.validate();
    require_grid(t_grid, "sample_gamma_path");
    SamplePath path{t_grid, std::vector<double>(t_grid.size())};
    double y = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        y += rng::gamma(eng, g.alpha, g.p * (t_grid[i] - prev));
        prev = t_grid[i];
        path.values[i] = y;
    }
    return path;
}

std::uint64_t sample_poisson_count(double mean, rng::Engine& eng) { return rng::poisson(eng, mean); }

SamplePath sample_process_path(const PathSpec& spec, const rng::Seed& seed) {
    spec.validate();
    rng::Engine eng = rng::make_engine(seed);
    const ProcessParams& pp = spec.params;
    const double step = needs_clock(spec.process) ? spec.resolved_stable_step() : 0.0;

    std::vector<double> levels = spec.t_grid;
    if (uses_gamma(spec.process)) levels = sample_gamma_path(pp.gamma(), spec.t_grid, eng).values;
    if (needs_clock(spec.process))
        levels = inverse_stable_at(pp.beta, levels, step, eng, spec.max_stable_steps);

    switch (spec.process) {
        case ProcessKind::Gamma:
        case ProcessKind::InverseStable: return {spec.t_grid, std::move(levels)};
        default: return {spec.t_grid, poisson_compose(pp.lambda, levels, eng)};
    }
}

std::ptrdiff_t find_time(const std::vector<double>& grid, double t) {
    const double tol = 1e-12 * std::max(1.0, std::abs(t));
    auto it = std::lower_bound(grid.begin(), grid.end(), t - tol);
    if (it != grid.end() && std::abs(*it - t) <= tol) return it - grid.begin();
    return -1;
}

SamplePath increment_path(const SamplePath& path, double delta, const std::vector<double>& at) {
    require_domain(std::isfinite(delta) && delta > 0.0, "increment_path: require delta > 0");
    SamplePath out{at, std::vector<double>(at.size())};
    for (std::size_t i = 0; i < at.size(); ++i) {
        const auto a = find_time(path.times, at[i]);
        const auto b = find_time(path.times, at[i] + delta);
        if (a < 0 || b < 0) {
            std::ostringstream os;
            os << "increment_path: grid lacks " << (a < 0 ? at[i] : at[i] + delta)
               << " needed for the increment at t=" << at[i];
            throw GridError(os.str());
        }
        out.values[i] = path.values[b] - path.values[a];
    }
    return out;
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::uint64_t count, unsigned threads,
                  const std::function<void(std::uint64_t)>& body) {
    if (count == 0) return;
    const std::uint64_t workers = std::min<std::uint64_t>(resolve_threads(threads), count);
    if (workers == 1) {
        for (std::uint64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> fail(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::uint64_t lo = count * w / workers;
            const std::uint64_t hi = count * (w + 1) / workers;
            for (std::uint64_t i = lo; i < hi; ++i) {
                try {
                    body(i);
                } catch (...) {
                    fail[w] = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    // Ranges are ordered, so the first failing worker holds the lowest index.
    for (std::uint64_t w = 0; w < workers; ++w)
        if (fail[w]) std::rethrow_exception(fail[w]);
}

}  // namespace fracdep::sim
