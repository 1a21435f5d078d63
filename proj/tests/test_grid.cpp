#include <catch_amalgamated.hpp>
#include <cmath>

#include "fracdep/error.hpp"
#include "fracdep/grid.hpp"

using namespace fracdep;
using Catch::Matchers::WithinRel;

TEST_CASE("geometric grids", "[grid]") {
    const auto g = grid::parse("geom:100:1e6:25");
    REQUIRE(g.size() == 25);
    CHECK(g.front() == 100.0);
    CHECK(g.back() == 1e6);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK_THAT(g[i] / g[i - 1], WithinRel(std::pow(10.0, 1.0 / 6.0), 1e-12));
    CHECK_THAT(grid::geometric(1.0, 100.0, 3)[1], WithinRel(10.0, 1e-15));
}

TEST_CASE("linear grids and lists", "[grid]") {
    CHECK(grid::parse("lin:0:1:5") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(grid::parse("1, 5,10") == std::vector<double>{1.0, 5.0, 10.0});
    CHECK(grid::parse("3") == std::vector<double>{3.0});
}

TEST_CASE("malformed grids", "[grid]") {
    CHECK_THROWS_AS(grid::parse(""), GridError);
    CHECK_THROWS_AS(grid::parse("1,1"), GridError);
    CHECK_THROWS_AS(grid::parse("2,1"), GridError);
    CHECK_THROWS_AS(grid::parse("1,x"), GridError);
    CHECK_THROWS_AS(grid::parse("geom:0:10:5"), GridError);
    CHECK_THROWS_AS(grid::parse("geom:1:10"), GridError);
    CHECK_THROWS_AS(grid::parse("lin:5:1:3"), GridError);
    CHECK_THROWS_AS(grid::parse("geom:1:10:1"), GridError);
}
