#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace fracdep::grid {

/// `count` points from start to stop, equally spaced in log t. Endpoints exact.
[[nodiscard]] std::vector<double> geometric(double start, double stop, std::size_t count);

/// `count` equally spaced points from start to stop. Endpoints exact.
[[nodiscard]] std::vector<double> linear(double start, double stop, std::size_t count);

/// Parses `geom:<start>:<stop>:<count>`, `lin:<start>:<stop>:<count>` or a
/// comma list. The result must be strictly increasing; throws GridError.
[[nodiscard]] std::vector<double> parse(std::string_view text);

}  // namespace fracdep::grid
