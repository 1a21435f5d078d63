#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracdep/analytic.hpp"
#include "fracdep/params.hpp"
#include "fracdep/quadrature.hpp"
#include "fracdep/rng.hpp"
#include "fracdep/sim.hpp"

namespace fracdep::estimate {

enum class Source { Analytic, Empirical };

[[nodiscard]] std::string to_string(Source s);

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t replications = 0;
};

struct CurvePoint {
    double t = 0.0;
    double corr = 0.0;
    std::optional<double> std_error;
};

struct CorrelationCurve {
    double s = 0.0;
    std::optional<double> delta;
    std::vector<CurvePoint> points;
    Source source = Source::Analytic;
};

struct ExponentFit {
    double d_hat = 0.0;
    double c_hat = 0.0;
    double r_squared = 0.0;
    analytic::Dependence label = analytic::Dependence::Unclassified;
    std::size_t points_used = 0;
    /// OLS standard error of the slope; 0 for an exact fit or two points.
    double d_std_error = 0.0;
};

struct DeltaRow {
    std::uint64_t m = 0;
    double value = 0.0;
    std::optional<double> std_error;
};

struct DeltaTable {
    std::uint64_t n = 0;
    std::vector<DeltaRow> rows;
    Source source = Source::Analytic;
};

struct McConfig {
    std::uint64_t reps = 10000;
    rng::Seed seed;
    unsigned threads = 0;
};

/// Stream reserved for bootstrap resampling; replications use streams 0..reps-1.
inline constexpr std::uint64_t kBootstrapStream = ~std::uint64_t{0};
inline constexpr unsigned kBootstrapResamples = 200;

/// Processes that have a correlation function.
enum class CurveProcess { Fpp, Fpn, Fnbp, Fnbn };

[[nodiscard]] std::string to_string(CurveProcess p);

struct MomentRow {
    double t = 0.0;
    MonteCarloEstimate mean;
    MonteCarloEstimate variance;
};

/// Sample mean and variance of X(t) at every grid point of `spec`.
[[nodiscard]] std::vector<MomentRow> mc_moments(const sim::PathSpec& spec, const McConfig& cfg);

/// Sample Corr[X(s), X(t)] (or of the delta-increments) across replications,
/// bootstrap standard errors. spec.t_grid is ignored and rebuilt from s, t_grid, delta.
[[nodiscard]] CorrelationCurve mc_correlation(const sim::PathSpec& spec, double s,
                                              const std::vector<double>& t_grid,
                                              std::optional<double> delta, const McConfig& cfg);

/// Exact correlation curve; FNBN uses its large-t asymptotic form when
/// `fnbn_asymptotic` is set.
[[nodiscard]] CorrelationCurve analytic_correlation(CurveProcess process, const ProcessParams& params,
                                                    double s, const std::vector<double>& t_grid,
                                                    std::optional<double> delta,
                                                    bool fnbn_asymptotic = true,
                                                    const specfun::QuadConfig& qcfg = {});

/// Decay exponent this process is expected to show.
[[nodiscard]] double theoretical_exponent(CurveProcess process, const ProcessParams& params,
                                          std::optional<double> delta);

/// 100 max(s, delta).
[[nodiscard]] double default_t_min(double s, std::optional<double> delta);

/// Least squares log|corr| = log c - d log t over points with t >= t_min and
/// |corr| above the floor (1e-12 analytic, 2 SE empirical).
[[nodiscard]] ExponentFit fit_power_law(const CorrelationCurve& curve, double t_min_cutoff);

[[nodiscard]] DeltaTable delta_analytic(const FppParams& params, std::uint64_t n,
                                        const std::vector<std::uint64_t>& m_values);

/// Delta_n^(m) from simulated FPP paths on integer grids; numerator and
/// denominator share paths. Delta-method standard errors.
[[nodiscard]] DeltaTable delta_empirical(const FppParams& params, std::uint64_t n,
                                         const std::vector<std::uint64_t>& m_values,
                                         const McConfig& cfg, double stable_step = 0.0);

}  // namespace fracdep::estimate
