#include "fracdep/rng.hpp"

#include <cmath>

#include "fracdep/error.hpp"

namespace fracdep::rng {

Engine make_engine(const Seed& seed) {
    const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
    const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed.root), hi(seed.root), lo(seed.stream), hi(seed.stream)};
    return Engine(seq);
}

double uniform_open01(Engine& eng) {
    return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

double exponential(Engine& eng) { return -std::log(uniform_open01(eng)); }

double gamma(Engine& eng, double rate, double shape) {
    detail::require_domain(rate > 0.0 && shape >= 0.0 && std::isfinite(shape),
                           "gamma: require rate > 0 and finite shape >= 0");
    if (shape == 0.0) return 0.0;
    std::gamma_distribution<double> dist(shape, 1.0 / rate);
    return dist(eng);
}

std::uint64_t poisson(Engine& eng, double mean) {
    detail::require_domain(mean >= 0.0 && std::isfinite(mean),
                           "poisson: require finite mean >= 0");
    if (mean == 0.0) return 0;
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(eng);
}

}  // namespace fracdep::rng
