#pragma once

#include <string>

namespace fracdep {

/// Fractional Poisson process N_beta(t, lambda).
struct FppParams {
    double beta = 1.0;    ///< fractional index, 0 < beta <= 1
    double lambda = 1.0;  ///< rate, events per unit time

    void validate() const;

    /// lambda / Gamma(1 + beta), the mean coefficient.
    [[nodiscard]] double q() const;
    /// beta q^2 B(beta, 1 + beta).
    [[nodiscard]] double d() const;
    /// 2 beta q^2 / (beta + 1), lower-bound constant of the increment factorial moment.
    [[nodiscard]] double c() const;
    /// Coefficient of t^(2 beta) in the variance; equals 2d - q^2 and vanishes at beta = 1.
    [[nodiscard]] double R() const;
};

/// Gamma subordinator Y(t) ~ Gamma(rate alpha, shape p t).
struct GammaParams {
    double alpha = 1.0;
    double p = 1.0;

    void validate() const;
};

/// Fractional negative binomial process Q_beta(t) = N_beta(Y(t)).
struct FnbpParams {
    FppParams fpp;
    GammaParams gamma;

    void validate() const;

    /// lambda / (alpha + lambda).
    [[nodiscard]] double eta() const;
    /// (p / alpha)^(2 beta) R, the large-t variance coefficient.
    [[nodiscard]] double d1() const;
};

/// Width-delta increments of a base process (FPN over FPP, FNBN over FNBP).
template <class Base>
struct NoiseParams {
    Base base;
    double delta = 1.0;

    void validate() const;
};

using FpnParams = NoiseParams<FppParams>;
using FnbnParams = NoiseParams<FnbpParams>;

extern template struct NoiseParams<FppParams>;
extern template struct NoiseParams<FnbpParams>;

/// Flat parameter bag used by the simulator and the CLI.
struct ProcessParams {
    double beta = 1.0;
    double lambda = 1.0;
    double alpha = 1.0;
    double p = 1.0;

    [[nodiscard]] FppParams fpp() const { return {beta, lambda}; }
    [[nodiscard]] GammaParams gamma() const { return {alpha, p}; }
    [[nodiscard]] FnbpParams fnbp() const { return {fpp(), gamma()}; }
};

}  // namespace fracdep
