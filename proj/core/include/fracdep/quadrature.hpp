#pragma once

#include <functional>

namespace fracdep::specfun {

/// Tolerances for adaptive_quad. The estimate is accepted once the summed
/// error bound is below max(rel_tol * |value|, abs_tol).
struct QuadConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    /// Maximum number of bisections of any subinterval. Weak endpoint
    /// singularities such as u^-0.9 need several hundred halvings.
    int max_depth = 1000;

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on [a, b].
///
/// Only interior nodes are evaluated, so integrable endpoint singularities
/// such as u^(g-1), g > 0, are handled by repeated bisection towards the
/// endpoint. Throws ConvergenceError when a subinterval would need more than
/// cfg.max_depth bisections before the tolerance is met.
[[nodiscard]] QuadResult adaptive_quad_detailed(const std::function<double(double)>& f,
                                                double a, double b,
                                                const QuadConfig& cfg = {});

[[nodiscard]] double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                                   const QuadConfig& cfg = {});

}  // namespace fracdep::specfun
