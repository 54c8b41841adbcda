#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <doctest.h>

#include "oracles.hpp"
#include "proxpt/errors.hpp"
#include "proxpt/outer_function.hpp"
#include "proxpt/phase_retrieval.hpp"
#include "proxpt/prox_quadratic.hpp"
#include "proxpt/rng.hpp"

using oracles::randn;
using proxpt::CapabilityError;
using proxpt::ConvexLipschitzOnQuadratic;
using proxpt::Matrix;
using proxpt::OuterFunction;
using proxpt::PhaseRetrievalOracle;
using proxpt::Rng;
using proxpt::StepSizeCheck;
using proxpt::StepSizeError;
using proxpt::validate_step_size;
using proxpt::Vector;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// dense materialization of (s*2aa' + I/eta) z = x/eta for one observation
Vector dense_pr_solve(const Vector& a, double s, double eta, const Vector& x) {
  const auto d = a.size();
  const Matrix lhs =
      2.0 * s * (a * a.transpose()) + Matrix::Identity(d, d) / eta;
  return oracles::lu_solve(lhs, x / eta);
}

// independent step oracle: nested s-grid over [-1,1] with dense solves,
// scoring the primal objective |(a'z)^2 - y| + ||z - x||^2/(2 eta)
Vector dense_pr_step(const Vector& a, double y, const Vector& x, double eta) {
  auto objective = [&](double s) {
    const Vector z = dense_pr_solve(a, s, eta, x);
    const double r = a.dot(z);
    return std::abs(r * r - y) + (z - x).squaredNorm() / (2 * eta);
  };
  const double s_star = oracles::refined_argmin(objective, -1.0, 1.0, 2001, 4);
  return dense_pr_solve(a, s_star, eta, x);
}

}  // namespace

TEST_SUITE("prox_quadratic") {

TEST_CASE("step-size validation against the stability bound") {
  const PhaseRetrievalOracle oracle(vec2(1, 1), 1.0);
  CHECK(oracle.max_step_size() == doctest::Approx(0.25));
  CHECK(validate_step_size(0.1, oracle) == StepSizeCheck::ok);
  CHECK(validate_step_size(0.249, oracle) == StepSizeCheck::near_bound);
  CHECK_THROWS_AS(validate_step_size(0.3, oracle), StepSizeError);
  CHECK_THROWS_AS(validate_step_size(0.25, oracle), StepSizeError);
  CHECK_THROWS_AS(validate_step_size(0.0, oracle), std::invalid_argument);
  CHECK_THROWS_AS(validate_step_size(-1.0, oracle), std::invalid_argument);

  // a = 0 means A = 0: every positive step size is admissible
  const PhaseRetrievalOracle null_oracle(Vector::Zero(2), 1.0);
  CHECK(null_oracle.max_step_size() ==
        std::numeric_limits<double>::infinity());
  CHECK(validate_step_size(1e9, null_oracle) == StepSizeCheck::ok);
}

TEST_CASE("the step-size error carries the computed bound") {
  const PhaseRetrievalOracle oracle(vec2(1, 1), 1.0);
  try {
    validate_step_size(0.3, oracle);
    FAIL("expected StepSizeError");
  } catch (const StepSizeError& e) {
    CHECK(e.bound == doctest::Approx(0.25));
    CHECK(std::string(e.what()).find("0.25") != std::string::npos);
  }
}

TEST_CASE("negative measurements are rejected") {
  CHECK_THROWS_AS(PhaseRetrievalOracle(vec2(1, 0), -1.0),
                  std::invalid_argument);
}

TEST_CASE("solve_system matches the dense example") {
  const Vector a = vec2(1, 0);
  const Vector x = vec2(1, 1);
  // oracle first: [[11,0],[0,10]] z = (10,10) has the solution (10/11, 1)
  const Vector expected = dense_pr_solve(a, 0.5, 0.1, x);
  CHECK(expected[0] == doctest::Approx(10.0 / 11.0).epsilon(1e-12));
  CHECK(expected[1] == doctest::Approx(1.0).epsilon(1e-12));

  const PhaseRetrievalOracle oracle(a, 1.0);
  const Vector got = oracle.solve_system(0.5, 0.1, x);
  CHECK(got[0] == doctest::Approx(10.0 / 11.0).epsilon(1e-12));
  CHECK(got[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_system degenerate cases") {
  const PhaseRetrievalOracle oracle(vec2(3, -2), 5.0);
  const Vector x = vec2(0.7, -1.3);
  const Vector z0 = oracle.solve_system(0.0, 0.05, x);
  CHECK((z0 - x).norm() == 0.0);

  const PhaseRetrievalOracle null_oracle(Vector::Zero(2), 5.0);
  const Vector z1 = null_oracle.solve_system(0.5, 10.0, x);
  CHECK((z1 - x).norm() == 0.0);
  CHECK(null_oracle.eval(x) == doctest::Approx(-5.0));
}

TEST_CASE("solve_system matches dense materializations on random instances") {
  Rng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = 2 + static_cast<Eigen::Index>(rng.below(5));
    const Vector a = randn(rng, d);
    const Vector x = 2.0 * randn(rng, d);
    const double eta = 0.5 / (2.0 * a.squaredNorm());
    const double s = rng.uniform(-1, 1);
    const PhaseRetrievalOracle oracle(a, 1.0);
    const Vector got = oracle.solve_system(s, eta, x);
    const Vector ref = dense_pr_solve(a, s, eta, x);
    CHECK((got - ref).lpNorm<Eigen::Infinity>() <=
          1e-8 * std::max(1.0, ref.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("dual derivative: generic template reductions") {
  // A = 0 and b = 0 make phi'(s) the constant c
  auto apply_zero = [](const Vector& v) { return Vector::Zero(v.size()); };
  auto solve_id = [](double, double, const Vector& x) { return x; };
  const Vector x = vec2(1.5, -0.5);
  const double c = -4.0;
  for (const double s : {-0.9, 0.0, 0.7}) {
    CHECK(proxpt::generic_dual_deriv(apply_zero, Vector::Zero(2), c, s, 0.3,
                                     x, solve_id) == doctest::Approx(c));
  }
}

TEST_CASE("dual derivative at s=0 equals the inner function value") {
  Rng rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = 1 + static_cast<Eigen::Index>(rng.below(6));
    const Vector a = randn(rng, d);
    const double y = rng.uniform(0, 4);
    const Vector x = randn(rng, d);
    const PhaseRetrievalOracle oracle(a, y);
    const double eta = 0.5 * oracle.max_step_size();
    CHECK(oracle.dual_deriv(0.0, eta, x) ==
          doctest::Approx(oracle.eval(x)).epsilon(1e-12));
  }
}

TEST_CASE("dual derivative matches central differences of dual_eval") {
  Rng rng(63);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = 1 + static_cast<Eigen::Index>(rng.below(6));
    const Vector a = randn(rng, d);
    const double y = rng.uniform(0, 4);
    const Vector x = 2.0 * randn(rng, d);
    const PhaseRetrievalOracle oracle(a, y);
    const double eta = 0.5 * oracle.max_step_size();
    const double s = rng.uniform(-0.95, 0.95);
    const double fd = 1e-6;
    const double num = oracles::central_diff(
        [&](double t) { return oracle.dual_eval(t, eta, x); }, s, fd);
    const double got = oracle.dual_deriv(s, eta, x);
    CHECK(std::abs(num - got) <= 1e-5 * std::max(1.0, std::abs(got)));
  }
}

TEST_CASE("the dual objective is strictly concave under the bound") {
  Rng rng(64);
  const auto h = OuterFunction::abs_value();
  for (const double frac : {0.5, 0.9}) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto d = 2 + static_cast<Eigen::Index>(rng.below(4));
      const Vector a = randn(rng, d);
      const double y = rng.uniform(0, 4);
      const Vector x = 2.0 * randn(rng, d);
      const PhaseRetrievalOracle oracle(a, y);
      const double eta = frac * oracle.max_step_size();
      auto q = [&](double s) {
        return oracle.dual_eval(s, eta, x) - h.conjugate(s);
      };
      const double step = 1e-3;
      for (const double s : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
        const double second = q(s + step) - 2 * q(s) + q(s - step);
        CHECK(second < 0.0);
      }
    }
  }
}

TEST_CASE("a Lipschitz outer function is required") {
  CHECK_THROWS_AS(ConvexLipschitzOnQuadratic(OuterFunction::half_squared(),
                                             Vector::Zero(2)),
                  CapabilityError);
}

TEST_CASE("zero-residual points are fixed points of the step") {
  const Vector a = vec2(1, 0);
  const Vector x0 = vec2(2, 0);  // (a'x)^2 = 4 = y
  ConvexLipschitzOnQuadratic opt(OuterFunction::abs_value(), x0);
  const PhaseRetrievalOracle oracle(a, 4.0);
  const double loss = opt.step(0.1, oracle);
  CHECK(loss == doctest::Approx(0.0).epsilon(1e-12));
  // The dual root is located to derivative-free solver resolution, so the
  // iterate returns to the fixed point at that accuracy, not bitwise.
  CHECK((opt.x() - x0).lpNorm<Eigen::Infinity>() <= 1e-7);
}

TEST_CASE("step rejects an inadmissible step size") {
  ConvexLipschitzOnQuadratic opt(OuterFunction::abs_value(), vec2(1, 0));
  const PhaseRetrievalOracle oracle(vec2(1, 1), 1.0);
  CHECK_THROWS_AS(opt.step(0.3, oracle), StepSizeError);
}

TEST_CASE("step matches the nested-grid dense oracle on the worked example") {
  const Vector a = vec2(1, 0);
  const Vector x0 = vec2(1, 0);
  const double y = 4.0;
  const double eta = 0.1;
  const Vector expected = dense_pr_step(a, y, x0, eta);
  ConvexLipschitzOnQuadratic opt(OuterFunction::abs_value(), x0);
  const PhaseRetrievalOracle oracle(a, y);
  const double loss = opt.step(eta, oracle);
  CHECK(loss == doctest::Approx(std::abs(1.0 - y)));
  CHECK((opt.x() - expected).lpNorm<Eigen::Infinity>() <= 1e-5);
}

TEST_CASE("steps match the nested-grid dense oracle on random instances") {
  Rng rng(65);
  for (int trial = 0; trial < 60; ++trial) {
    const auto d = 1 + static_cast<Eigen::Index>(rng.below(6));
    const Vector a = randn(rng, d);
    const double y = rng.uniform(0, 4);
    const Vector x0 = randn(rng, d);
    const PhaseRetrievalOracle oracle(a, y);
    const double eta = 0.5 * oracle.max_step_size();
    ConvexLipschitzOnQuadratic opt(OuterFunction::abs_value(), x0);
    opt.step(eta, oracle);
    const Vector expected = dense_pr_step(a, y, x0, eta);
    CHECK((opt.x() - expected).lpNorm<Eigen::Infinity>() <= 1e-5);
  }
}

TEST_CASE("repeated steps drive the phase-retrieval loss down") {
  Rng rng(66);
  const Eigen::Index d = 5;
  const Vector x_star = randn(rng, d);
  ConvexLipschitzOnQuadratic opt(OuterFunction::abs_value(),
                                 x_star + 0.5 * randn(rng, d));
  double last = std::numeric_limits<double>::infinity();
  double eta_cap = std::numeric_limits<double>::infinity();
  std::vector<std::pair<Vector, double>> data;
  for (int i = 0; i < 40; ++i) {
    const Vector a = randn(rng, d);
    const double m = a.dot(x_star);
    data.emplace_back(a, m * m);
    eta_cap = std::min(eta_cap, PhaseRetrievalOracle(a, m * m).max_step_size());
  }
  const double eta = 0.5 * eta_cap;
  for (int epoch = 0; epoch < 30; ++epoch) {
    double total = 0;
    for (const auto& [a, y] : data) {
      total += opt.step(eta, PhaseRetrievalOracle(a, y));
    }
    // Near convergence the epoch total sits at the solver's resolution
    // (~1e-6), so allow jitter at that scale instead of strict descent.
    if (epoch >= 25) CHECK(total <= last + 1e-7);
    last = total;
  }
  CHECK(last <= 1e-6);
}

}  // TEST_SUITE
