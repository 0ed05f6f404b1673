#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "kcenter/core.hpp"
#include "kcenter/rng.hpp"
#include "test_util.hpp"

using namespace kcenter;
using kctest::collinear11;
using kctest::random_scenario;
using kctest::square10;

TEST_CASE("distance basics") {
  CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
  CHECK(distance({2, 3}, {2, 3}) == 0.0);
  CHECK(distance({0, 0}, {1, 1}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(distance_sq({0, 0}, {3, 4}) == doctest::Approx(25.0));
}

TEST_CASE("distance is a metric on random triples") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const Point a{rng.uniform(-50, 50), rng.uniform(-50, 50)};
    const Point b{rng.uniform(-50, 50), rng.uniform(-50, 50)};
    const Point c{rng.uniform(-50, 50), rng.uniform(-50, 50)};
    CHECK(distance(a, b) >= 0.0);
    CHECK(distance(a, b) == distance(b, a));
    CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
    CHECK(distance_sq(a, b) ==
          doctest::Approx(distance(a, b) * distance(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("scenario validation") {
  Scenario empty;
  CHECK_THROWS_AS(validate(empty), std::invalid_argument);

  Scenario bad;
  bad.vertices = {{0, 0}, {std::nan(""), 1}};
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  CHECK_NOTHROW(validate(square10()));
}

TEST_CASE("bounding box of the square") {
  const BoundingBox box = bounding_box(square10());
  CHECK(box.min == Point{0, 0});
  CHECK(box.max == Point{10, 10});
  CHECK(box.long_side() == 10.0);
  CHECK(box.diagonal() == doctest::Approx(std::sqrt(200.0)));
}

TEST_CASE("assign picks the nearest center") {
  Scenario s;
  s.vertices = {{0, 0}, {10, 0}};
  CHECK(assign(s, {{1, 0}, {9, 0}}) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("assign breaks ties toward the lowest center index") {
  Scenario s;
  s.vertices = {{5, 0}};
  CHECK(assign(s, {{0, 0}, {10, 0}}) == std::vector<std::size_t>{0});

  // Both off-diagonal corners are equidistant from the two chosen corners.
  CHECK(assign(square10(), {{0, 0}, {10, 10}}) ==
        std::vector<std::size_t>{0, 0, 0, 1});

  Scenario line;
  line.vertices = {{0, 0}, {1, 0}, {9, 0}, {10, 0}};
  CHECK(assign(line, {{0, 0}, {10, 0}}) == std::vector<std::size_t>{0, 0, 1, 1});
}

TEST_CASE("assign requires centers") {
  CHECK_THROWS_AS(assign(square10(), {}), std::invalid_argument);
}

TEST_CASE("evaluate at the square midpoint") {
  const Scenario s = square10();
  const Solution sol =
      make_solution(s, {{5, 5}}, PlacementConstraint::free_plane());
  const ObjectiveReport rep = evaluate(s, sol);
  const double r = std::sqrt(50.0);
  CHECK(rep.max == doctest::Approx(r));
  CHECK(rep.q95 == doctest::Approx(r));
  CHECK(rep.median == doctest::Approx(r));
  CHECK(rep.mean == doctest::Approx(r));
  CHECK(rep.sum == doctest::Approx(4 * r));
}

TEST_CASE("evaluate with every vertex a center is all zero") {
  const Scenario s = square10();
  const Solution sol = make_solution(s, s.vertices, PlacementConstraint::node());
  const ObjectiveReport rep = evaluate(s, sol);
  CHECK(rep.max == 0.0);
  CHECK(rep.q95 == 0.0);
  CHECK(rep.median == 0.0);
  CHECK(rep.mean == 0.0);
  CHECK(rep.sum == 0.0);
}

TEST_CASE("evaluate from a single corner uses nearest-rank quantiles") {
  const Scenario s = square10();
  const Solution sol = make_solution(s, {{0, 0}}, PlacementConstraint::node());
  const ObjectiveReport rep = evaluate(s, sol);
  CHECK(rep.max == doctest::Approx(std::sqrt(200.0)));
  CHECK(rep.q95 == doctest::Approx(std::sqrt(200.0)));
  CHECK(rep.median == doctest::Approx(10.0));
  CHECK(rep.mean == doctest::Approx(8.535533905932738));
}

TEST_CASE("evaluate rejects structural mismatches") {
  const Scenario s = square10();
  Solution sol = make_solution(s, {{0, 0}}, PlacementConstraint::node());
  sol.assignment.pop_back();
  CHECK_THROWS_AS(evaluate(s, sol), std::invalid_argument);

  Solution no_centers;
  no_centers.assignment = {0, 0, 0, 0};
  CHECK_THROWS_AS(evaluate(s, no_centers), std::invalid_argument);
}

TEST_CASE("report statistics are ordered") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> d;
    const std::size_t n = 1 + rng.uniform_index(40);
    for (std::size_t i = 0; i < n; ++i) d.push_back(rng.uniform(0, 30));
    const ObjectiveReport rep = report_from_distances(d);
    CHECK(rep.median <= rep.q95);
    CHECK(rep.q95 <= rep.max);
    CHECK(rep.mean <= rep.max);
    CHECK(rep.sum ==
          doctest::Approx(rep.mean * static_cast<double>(n)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(report_from_distances({}), std::invalid_argument);
}

TEST_CASE("solution validation accepts nearest assignments only") {
  const Scenario s = square10();
  Solution ok = make_solution(s, {{0, 0}, {10, 10}}, PlacementConstraint::node());
  CHECK_NOTHROW(validate(s, ok));

  // Same distances, but the tie is parked on the higher center index.
  Solution tie = ok;
  tie.assignment[1] = 1;
  CHECK_THROWS_AS(validate(s, tie), std::invalid_argument);

  Solution off_vertex =
      make_solution(s, {{5, 5}}, PlacementConstraint::node());
  CHECK_THROWS_AS(validate(s, off_vertex), std::invalid_argument);
  off_vertex.constraint = PlacementConstraint::free_plane();
  CHECK_NOTHROW(validate(s, off_vertex));
}

TEST_CASE("normalize anchors the box and scales the long side to 100") {
  Scenario s;
  s.vertices = {{5, 5}, {15, 5}};
  const Scenario out = normalize(s);
  CHECK(out.normalized);
  CHECK(out.vertices[0] == Point{0, 0});
  CHECK(out.vertices[1] == Point{100, 0});

  Scenario tall;
  tall.vertices = {{2, 1}, {2, 3}, {3, 1}};
  const Scenario tout = normalize(tall);
  const BoundingBox box = bounding_box(tout);
  CHECK(box.min == Point{0, 0});
  CHECK(box.long_side() == doctest::Approx(100.0));
}

TEST_CASE("normalize is exactly idempotent") {
  Rng rng(23);
  const Scenario s = random_scenario(rng, 60, -7, 13);
  const Scenario once = normalize(s);
  const Scenario twice = normalize(once);
  for (std::size_t i = 0; i < once.size(); ++i) {
    CHECK(once.vertices[i] == twice.vertices[i]);
  }
}

TEST_CASE("normalize preserves distance ratios") {
  Rng rng(29);
  const Scenario s = random_scenario(rng, 40, 200, 900);
  const Scenario out = normalize(s);
  const double ref = distance(s.vertices[0], s.vertices[1]);
  const double ref_out = distance(out.vertices[0], out.vertices[1]);
  REQUIRE(ref > 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      const double a = distance(s.vertices[i], s.vertices[j]) / ref;
      const double b = distance(out.vertices[i], out.vertices[j]) / ref_out;
      CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
  }
}

TEST_CASE("normalize rejects degenerate scenarios") {
  Scenario s;
  s.vertices = {{4, 4}, {4, 4}, {4, 4}};
  CHECK_THROWS_AS(normalize(s), std::invalid_argument);
}

TEST_CASE("optimum lower bound is half the farthest-first objective") {
  CHECK(optimum_lower_bound(112.6) == doctest::Approx(56.3));
  CHECK(optimum_lower_bound(0.0) == 0.0);
  CHECK(optimum_lower_bound(19.8) == doctest::Approx(9.9));
  CHECK_THROWS_AS(optimum_lower_bound(-1.0), std::invalid_argument);
}
