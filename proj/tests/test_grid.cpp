#include "doctest.h"
#include "sharpconvex/errors.hpp"
#include "sharpconvex/grid.hpp"

using namespace sharpconvex;
using doctest::Approx;

TEST_CASE("grid parsing") {
  const auto lin = grid::parse("0:1:5:lin");
  REQUIRE(lin.size() == 5);
  CHECK(lin[1] == Approx(0.25));
  CHECK(lin.back() == 1.0);

  const auto lg = grid::parse("1e-3:10:5:log");
  REQUIRE(lg.size() == 5);
  CHECK(lg.front() == 1e-3);
  CHECK(lg[1] == Approx(1e-2));
  CHECK(lg.back() == 10.0);

  CHECK(grid::parse("0:2:3") == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(grid::parse("0.5,1,2.3") == std::vector<double>{0.5, 1.0, 2.3});
  CHECK(grid::parse("7") == std::vector<double>{7.0});
}

TEST_CASE("grid parse errors") {
  CHECK_THROWS_AS(grid::parse(""), ArgumentError);
  CHECK_THROWS_AS(grid::parse("0:1"), ArgumentError);
  CHECK_THROWS_AS(grid::parse("0:1:0"), ArgumentError);
  CHECK_THROWS_AS(grid::parse("0:1:4:cubic"), ArgumentError);
  CHECK_THROWS_AS(grid::parse("0:1:4:log"), ArgumentError);
  CHECK_THROWS_AS(grid::parse("1,x"), ArgumentError);
}
