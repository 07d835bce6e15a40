#include <doctest.h>

#include <random>

#include "credal/core_model.hpp"
#include "credal/errors.hpp"
#include "oracles.hpp"

using namespace credal;

namespace {

std::vector<std::vector<double>> vertex_list(const CredalSet& s) {
  std::vector<std::vector<double>> out;
  for (const auto& g : s.generators()) out.emplace_back(g.weights().begin(), g.weights().end());
  return out;
}

}  // namespace

TEST_CASE("outcome space validation") {
  CHECK_THROWS_AS(OutcomeSpace({1.0}), DomainError);
  CHECK_THROWS_AS(OutcomeSpace({0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(OutcomeSpace({1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(OutcomeSpace({0.0, std::nan("")}), DomainError);
  const OutcomeSpace s({-1.0, 0.5, 2.0});
  CHECK(s.size() == 3);
  CHECK(s.min() == -1.0);
  CHECK(s.max() == 2.0);
  CHECK(s == OutcomeSpace({-1.0, 0.5, 2.0}));
}

TEST_CASE("distribution validation and renormalization") {
  const OutcomeSpace s({0.0, 1.0, 2.0});
  CHECK_THROWS_AS(Distribution(s, {0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(Distribution(s, {0.4, 0.2, 0.2}), DomainError);
  CHECK_THROWS_AS(Distribution(s, {1.1, -0.1, 0.0}), DomainError);
  CHECK_THROWS_AS(Distribution(s, {0.5, std::nan(""), 0.5}), DomainError);

  const Distribution near(s, {0.5, 0.25, 0.25 + 5e-10});
  double sum = 0.0;
  for (double w : near.weights()) sum += w;
  CHECK(std::abs(sum - 1.0) <= kProbabilityTol);

  const Distribution clamped(s, {1.0, -1e-13, 0.0});
  CHECK(clamped[1] == 0.0);

  CHECK(Distribution::point_mass(s, 2).mean() == 2.0);
  CHECK(Distribution::uniform(s).mean() == doctest::Approx(1.0));
}

TEST_CASE("mix and set operations") {
  const OutcomeSpace s({0.0, 1.0});
  const Distribution a(s, {1.0, 0.0}), b(s, {0.0, 1.0});
  const auto m = mix(a, b, 0.25);
  CHECK(m[0] == doctest::Approx(0.25));
  CHECK_THROWS_AS(mix(a, b, 1.5), DomainError);
  CHECK_THROWS_AS(mix(a, Distribution::uniform(OutcomeSpace({0.0, 2.0})), 0.5), SpaceMismatchError);

  const CredalSet p{a, b}, q{b};
  CHECK(union_sets(p, q).size() == 2);
  CHECK(convex_combine_sets(p, p, 0.5).size() == 3);  // a, b and their midpoint
  CHECK(convex_combine_sets(q, q, 0.3).size() == 1);
  CHECK_THROWS_AS(CredalSet(std::vector<Distribution>{}), DomainError);
}

TEST_CASE("interval bounds validation") {
  const OutcomeSpace s({0.0, 1.0});
  CHECK_THROWS_AS(IntervalBounds(s, {0.6, 0.0}, {0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(IntervalBounds(s, {-0.1, 0.0}, {0.5, 1.0}), DomainError);
  CHECK_THROWS_AS(IntervalBounds(s, {0.6, 0.6}, {1.0, 1.0}), InfeasibleError);
  CHECK_THROWS_AS(IntervalBounds(s, {0.0, 0.0}, {0.3, 0.3}), InfeasibleError);
  CHECK_THROWS_AS(IntervalBounds(s, {0.0}, {1.0}), DomainError);
}

TEST_CASE("binary bounds give two vertices") {
  const OutcomeSpace s({0.0, 1.0});
  const auto g = bounds_to_generators(IntervalBounds(s, {0.5, 0.0}, {1.0, 0.5}));
  REQUIRE(g.size() == 2);
  CHECK(oracle::same_vertex_sets(vertex_list(g), {{0.5, 0.5}, {1.0, 0.0}}, 0.0));
}

TEST_CASE("degenerate bounds give a single vertex") {
  const OutcomeSpace s({0.0, 1.0, 2.0});
  const auto g = bounds_to_generators(IntervalBounds(s, {0.2, 0.3, 0.5}, {0.2, 0.3, 0.5}));
  REQUIRE(g.size() == 1);
  CHECK(g[0][2] == doctest::Approx(0.5));
}

TEST_CASE("vertex enumeration matches facet-combination oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 3;
    std::vector<double> l, u;
    oracle::random_bounds(rng, n, l, u);
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = static_cast<double>(i);
    const auto g = bounds_to_generators(IntervalBounds(OutcomeSpace(z), l, u));
    CAPTURE(trial);
    CHECK(oracle::same_vertex_sets(vertex_list(g), oracle::brute_force_vertices(l, u), 1e-9));
    for (const auto& v : g.generators()) {
      for (std::size_t i = 0; i < n; ++i) {
        // renormalization may move a coordinate by an ulp
        CHECK(v[i] >= l[i] - 1e-15);
        CHECK(v[i] <= u[i] + 1e-15);
      }
    }
  }
}

TEST_CASE("expectation") {
  const Distribution p(OutcomeSpace({0.0, 1.0, 2.0}), {0.5, 0.0, 0.5});
  const std::vector<double> sq{0.0, 1.0, 4.0};
  CHECK(expectation(p, sq) == doctest::Approx(2.0));
  const std::vector<double> short_values{1.0};
  CHECK_THROWS_AS(expectation(p, short_values), DomainError);
}
