// Compiled with -ffast-math so the loop below maps onto the vector math
// library. Every input is finite and strictly inside (0, 1).
#include "stable_batch.hpp"

#include <cmath>
#include <numbers>

namespace fracdep::sim::detail {

#if defined(__GNUC__) && !defined(__clang__) && defined(__x86_64__) && defined(__linux__)
__attribute__((target_clones("arch=haswell", "default")))
#endif
void positive_stable_batch(double beta, const double* v, const double* u, double* out,
                           std::size_t n) {
    constexpr double pi = std::numbers::pi;
    const double inv_beta = 1.0 / beta;
    const double c = (1.0 - beta) / beta;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = -std::log(u[i]);
        const double sb = std::sin(beta * pi * v[i]);
        const double log_s = std::log(sb / std::sin(pi * v[i])) * inv_beta +
                             c * std::log(std::sin((1.0 - beta) * pi * v[i]) / (sb * w));
        out[i] = std::exp(log_s);
    }
}

}  // namespace fracdep::sim::detail
