#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fracdep/params.hpp"
#include "fracdep/rng.hpp"

namespace fracdep::sim {

enum class ProcessKind { Poisson, Gamma, InverseStable, Fpp, NegativeBinomial, Fnbp };

[[nodiscard]] std::string to_string(ProcessKind k);

/// One realization evaluated on a time grid. Values are nondecreasing.
struct SamplePath {
    std::vector<double> times;
    std::vector<double> values;
};

inline constexpr std::uint64_t kDefaultMaxStableSteps = 100'000'000;

struct PathSpec {
    ProcessKind process = ProcessKind::Fpp;
    ProcessParams params;
    std::vector<double> t_grid;
    /// Step of the stable-path grid in state units; 0 picks default_stable_step.
    double stable_step = 0.0;
    std::uint64_t max_stable_steps = kDefaultMaxStableSteps;

    void validate() const;
    /// Largest level the inverse-stable clock must reach (t_max, or p t_max / alpha).
    [[nodiscard]] double clock_horizon() const;
    [[nodiscard]] double resolved_stable_step() const;
};

/// Step giving about 1e4 expected steps before the stable path passes `horizon`.
[[nodiscard]] double default_stable_step(double beta, double horizon);

/// Positive stable law with E[exp(-u S)] = exp(-u^beta), 0 < beta < 1.
[[nodiscard]] double sample_positive_stable(double beta, rng::Engine& eng);

/// Exact single-time draw of E_beta(t) = (t / S)^beta.
[[nodiscard]] double sample_inverse_stable_marginal(double beta, double t, rng::Engine& eng);

/// Inverse-stable clock at nondecreasing levels via first passage of a
/// discretized stable path. Throws ResourceError past `max_steps`.
[[nodiscard]] std::vector<double> inverse_stable_at(double beta, const std::vector<double>& levels,
                                                    double stable_step, rng::Engine& eng,
                                                    std::uint64_t max_steps = kDefaultMaxStableSteps);

[[nodiscard]] SamplePath sample_inverse_stable_path(double beta, const std::vector<double>& t_grid,
                                                    double stable_step, rng::Engine& eng,
                                                    std::uint64_t max_steps = kDefaultMaxStableSteps);

[[nodiscard]] SamplePath sample_gamma_path(const GammaParams& g, const std::vector<double>& t_grid,
                                           rng::Engine& eng);

[[nodiscard]] std::uint64_t sample_poisson_count(double mean, rng::Engine& eng);

[[nodiscard]] SamplePath sample_process_path(const PathSpec& spec, const rng::Seed& seed);

/// X(t + delta) - X(t) at each t in `at`; throws GridError when t or t + delta
/// is not on the path's grid.
[[nodiscard]] SamplePath increment_path(const SamplePath& path, double delta,
                                        const std::vector<double>& at);

/// Index of t on a sorted grid, matched to 1e-12 relative; -1 if absent.
[[nodiscard]] std::ptrdiff_t find_time(const std::vector<double>& grid, double t);

/// 0 means hardware concurrency (at least 1).
[[nodiscard]] unsigned resolve_threads(unsigned requested);

/// Calls body(i) for i in [0, count) across `threads` workers. Work is split by
/// index only, so callers writing to slot i get schedule-independent results.
/// The exception from the lowest failing index is rethrown.
void parallel_for(std::uint64_t count, unsigned threads,
                  const std::function<void(std::uint64_t)>& body);

}  // namespace fracdep::sim
