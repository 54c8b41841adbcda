#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "oracles.hpp"
#include "proxpt/errors.hpp"
#include "proxpt/rng.hpp"
#include "proxpt/solve1d.hpp"

using proxpt::Bracket;
using proxpt::bisect_root;
using proxpt::minimize_bounded;
using proxpt::SolverFailure;

TEST_SUITE("solve1d") {

TEST_CASE("bisect_root finds the root of a linear function") {
  const double root =
      bisect_root([](double s) { return 1.0 - 2.0 * s; }, Bracket{0, 1});
  CHECK(root == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("bisect_root finds the symmetric logit root") {
  const double root = bisect_root(
      [](double s) { return std::log(1.0 - s) - std::log(s); },
      Bracket{1e-6, 1.0 - 1e-6});
  CHECK(root == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("bisect_root finds a cube root") {
  const double root =
      bisect_root([](double s) { return 0.125 - s * s * s; }, Bracket{0, 1});
  CHECK(root == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("bisect_root returns an exact endpoint root immediately") {
  CHECK(bisect_root([](double s) { return -s; }, Bracket{0, 1}) == 0.0);
  CHECK(bisect_root([](double s) { return 1.0 - s; }, Bracket{0, 1}) == 1.0);
}

TEST_CASE("bisect_root rejects a bracket without a sign change") {
  CHECK_THROWS_AS(
      bisect_root([](double s) { return s - 2.0; }, Bracket{0, 1}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      bisect_root([](double s) { return s + 2.0; }, Bracket{0, 1}),
      std::invalid_argument);
}

TEST_CASE("bisect_root reports failure when max_iter is too small") {
  // the root 1/3 is never an exact midpoint, so three halvings cannot finish
  CHECK_THROWS_AS(bisect_root([](double s) { return 1.0 / 3.0 - s; },
                              Bracket{0, 1, 1e-12, 3}),
                  SolverFailure);
}

TEST_CASE("bisect_root halves the bracket each iteration") {
  // after the two endpoint probes, one evaluation per halving suffices
  long evals = 0;
  const double tol = 1e-9;
  bisect_root(
      [&evals](double s) {
        ++evals;
        return 0.7 - s;
      },
      Bracket{0, 1, tol, 200});
  const long budget =
      static_cast<long>(std::ceil(std::log2(1.0 / tol))) + 2;
  CHECK(evals <= budget);
}

TEST_CASE("bisect_root validates the bracket fields") {
  auto f = [](double s) { return -s; };
  CHECK_THROWS_AS(bisect_root(f, Bracket{1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(bisect_root(f, Bracket{0, 1, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(bisect_root(f, Bracket{0, 1, 1e-12, 0}),
                  std::invalid_argument);
}

TEST_CASE("minimize_bounded locates a quadratic vertex") {
  const auto res = minimize_bounded(
      [](double s) { return (s - 0.3) * (s - 0.3); }, Bracket{0, 1, 1e-10});
  CHECK(res.converged);
  CHECK(res.x == doctest::Approx(0.3).epsilon(1e-8));
}

TEST_CASE("minimize_bounded locates the vertex of s^2 - s") {
  const auto res =
      minimize_bounded([](double s) { return s * s - s; }, Bracket{0, 1});
  CHECK(res.converged);
  CHECK(res.x == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(res.value == doctest::Approx(-0.25).epsilon(1e-12));
}

TEST_CASE("minimize_bounded returns the boundary for a monotone function") {
  const auto res = minimize_bounded([](double s) { return s; }, Bracket{0, 1});
  CHECK(res.converged);
  CHECK(res.x == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("minimize_bounded never evaluates outside the bracket") {
  proxpt::Rng rng(42);
  for (int i = 0; i < 50; ++i) {
    const double lo = rng.uniform(-5, 0);
    const double hi = lo + rng.uniform(0.1, 10);
    const double center = rng.uniform(lo - 1, hi + 1);
    bool inside = true;
    minimize_bounded(
        [&](double s) {
          inside = inside && s >= lo && s <= hi;
          return std::cos(3 * s) + (s - center) * (s - center);
        },
        Bracket{lo, hi});
    CHECK(inside);
  }
}

TEST_CASE("minimize_bounded flags an exhausted iteration budget") {
  const auto res = minimize_bounded(
      [](double s) { return (s - 0.3) * (s - 0.3); }, Bracket{0, 1, 1e-10, 2});
  CHECK_FALSE(res.converged);
  CHECK(res.x >= 0.0);
  CHECK(res.x <= 1.0);
}

TEST_CASE("minimize_bounded matches a fine grid on random convex functions") {
  proxpt::Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const double m = rng.uniform(0.05, 0.95);
    const double c2 = rng.uniform(0.1, 5.0);
    const double c4 = rng.uniform(0.0, 5.0);
    auto f = [=](double s) {
      const double t = s - m;
      return c2 * t * t + c4 * t * t * t * t;
    };
    const double expected = oracles::grid_argmin(f, 0.0, 1.0, 1000001);
    const auto res = minimize_bounded(f, Bracket{0, 1});
    CHECK(res.converged);
    CHECK(std::abs(res.x - expected) <= 1e-6);
  }
}

}  // TEST_SUITE
