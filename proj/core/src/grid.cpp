#include "fracdep/grid.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "fracdep/error.hpp"

namespace fracdep::grid {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view s) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw GridError("grid: cannot parse number '" + std::string(s) + "'");
    return v;
}

std::size_t parse_count(std::string_view s) {
    s = trim(s);
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw GridError("grid: cannot parse point count '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = s.find(sep, pos);
        out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return out;
}

void check_range(double start, double stop, std::size_t count) {
    if (count < 2) throw GridError("grid: need at least 2 points in a range");
    if (!(stop > start)) throw GridError("grid: range stop must exceed start");
}

void require_increasing(const std::vector<double>& g) {
    if (g.empty()) throw GridError("grid: no points");
    for (std::size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1])) throw GridError("grid: points must be strictly increasing");
}

}  // namespace

std::vector<double> geometric(double start, double stop, std::size_t count) {
    check_range(start, stop, count);
    if (!(start > 0.0)) throw GridError("grid: geometric range needs start > 0");
    std::vector<double> g(count);
    const double l0 = std::log(start);
    const double span = std::log(stop) - l0;
    const double last = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = std::exp(l0 + span * static_cast<double>(i) / last);
    g.front() = start;
    g.back() = stop;
    require_increasing(g);
    return g;
}

std::vector<double> linear(double start, double stop, std::size_t count) {
    check_range(start, stop, count);
    std::vector<double> g(count);
    const double last = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = start + (stop - start) * static_cast<double>(i) / last;
    g.back() = stop;
    require_increasing(g);
    return g;
}

std::vector<double> parse(std::string_view text) {
    text = trim(text);
    const bool geom = text.starts_with("geom:");
    if (geom || text.starts_with("lin:")) {
        const auto parts = split(text.substr(geom ? 5 : 4), ':');
        if (parts.size() != 3)
            throw GridError("grid: expected <kind>:<start>:<stop>:<count>, got '" +
                            std::string(text) + "'");
        const double a = parse_number(parts[0]);
        const double b = parse_number(parts[1]);
        const std::size_t n = parse_count(parts[2]);
        return geom ? geometric(a, b, n) : linear(a, b, n);
    }
    std::vector<double> g;
    for (auto part : split(text, ',')) g.push_back(parse_number(part));
    require_increasing(g);
    return g;
}

}  // namespace fracdep::grid
