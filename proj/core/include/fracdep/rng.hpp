#pragma once

#include <cstdint>
#include <random>

namespace fracdep::rng {

/// (root, stream) fully determines every draw of one replication.
struct Seed {
    std::uint64_t root = 42;
    std::uint64_t stream = 0;
};

using Engine = std::mt19937_64;

[[nodiscard]] Engine make_engine(const Seed& seed);

/// Uniform on the open interval (0, 1), 53 random bits.
[[nodiscard]] double uniform_open01(Engine& eng);

/// Unit-rate exponential.
[[nodiscard]] double exponential(Engine& eng);

/// Gamma(rate, shape); returns 0 when shape == 0.
[[nodiscard]] double gamma(Engine& eng, double rate, double shape);

/// Poisson(mean); returns 0 when mean == 0.
[[nodiscard]] std::uint64_t poisson(Engine& eng, double mean);

}  // namespace fracdep::rng
