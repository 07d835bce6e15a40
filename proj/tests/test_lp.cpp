#include <doctest.h>

#include "../src/lp.hpp"

using credal::detail::solve_lp;

TEST_CASE("simplex solves a textbook problem") {
  // max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18
  const auto r = solve_lp({{1, 0}, {0, 2}, {3, 2}}, {4, 12, 18}, {3, 5}, 100);
  REQUIRE(r.optimal);
  CHECK(r.objective == doctest::Approx(36.0));
  CHECK(r.x[0] == doctest::Approx(2.0));
  CHECK(r.x[1] == doctest::Approx(6.0));
}

TEST_CASE("simplex handles degenerate rows") {
  // several constraints tight at the optimum
  const auto r = solve_lp({{1, 1}, {1, 0}, {0, 1}, {1, 2}}, {1, 1, 1, 1}, {1, 1}, 100);
  REQUIRE(r.optimal);
  CHECK(r.objective == doctest::Approx(1.0));
}

TEST_CASE("simplex reports unboundedness and budget exhaustion") {
  const auto unbounded = solve_lp({{1, -1}}, {1}, {1, 1}, 100);
  CHECK_FALSE(unbounded.bounded);
  CHECK_FALSE(unbounded.optimal);
  const auto starved = solve_lp({{1, 0}, {0, 2}, {3, 2}}, {4, 12, 18}, {3, 5}, 1);
  CHECK_FALSE(starved.optimal);
}
