#pragma once

#include "proxpt/outer_function.hpp"
#include "proxpt/types.hpp"

namespace proxpt {

// Interface for the quadratic inner function g(x) = (1/2) x'A x + b'x + c
// used by ConvexLipschitzOnQuadratic. An oracle is constructed per
// observation and is immutable; implementations exploit the structure of A
// to answer each query in (near-)linear time.
class QuadraticOracle {
 public:
  virtual ~QuadraticOracle() = default;

  // g(x)
  virtual double eval(const Vector& x) const = 0;

  // the constant term c
  virtual double scalar() const = 0;

  // phi(s) = -(1/2) g_v' (sA + I/eta)^{-1} g_v + s c with g_v = x/eta - s b,
  // exact up to an s-independent additive constant (argmax-invariant; the
  // convention lets sparse oracles drop untouched coordinates)
  virtual double dual_eval(double s, double eta, const Vector& x) const = 0;

  // solution of (sA + I/eta) z = x/eta - s b
  virtual Vector solve_system(double s, double eta, const Vector& x) const = 0;

  // phi'(s); optional capability — implement has_dual_deriv() when present
  virtual bool has_dual_deriv() const { return false; }
  virtual double dual_deriv(double s, double eta, const Vector& x) const;

  // supremum of admissible step sizes (keeps sA + I/eta positive definite for
  // all s in dom h*); +infinity when A = 0
  virtual double max_step_size() const = 0;
};

enum class StepSizeCheck { ok, near_bound };

// Accepts eta iff eta < oracle.max_step_size(); returns near_bound (a
// warning) when eta >= 0.99 x bound. Violations throw StepSizeError with the
// bound in the message.
StepSizeCheck validate_step_size(double eta, const QuadraticOracle& oracle);

// Maximizer of q(s) = oracle.dual_eval(s, eta, x) - h*(s) over dom h*.
// Compact domains use bounded minimization of -q; non-compact domains
// bracket via the endpoint sequences and q'(s) = dual_deriv - (h*)'(s),
// which requires the oracle's dual_deriv capability.
double solve_quad_dual(const OuterFunction& h, const QuadraticOracle& oracle,
                       double eta, const Vector& x);

// Incremental proximal-point optimizer for losses h(g(x)) with quadratic g:
// each step computes x+ = argmin_x h(g(x)) + (1/(2 eta)) ||x - x_t||^2 via
// the 1-D dual and one final solve_system at s*. h must be Lipschitz.
class ConvexLipschitzOnQuadratic {
 public:
  ConvexLipschitzOnQuadratic(OuterFunction h, Vector x0);

  // returns h(g(x)) at the pre-step parameters; eta must pass
  // validate_step_size for this oracle
  double step(double eta, const QuadraticOracle& oracle);

  const Vector& x() const { return x_; }
  const OuterFunction& h() const { return h_; }

 private:
  OuterFunction h_;
  Vector x_;
};

// phi'(s) = (1/2) z'(Az) + b'z + c with z = solve(s, eta, x); the caller
// subtracts (h*)'(s) separately. apply_a computes A v for a vector v and
// solve computes (sA + I/eta)^{-1}(x/eta - s b).
template <typename ApplyA, typename Solve>
double generic_dual_deriv(ApplyA&& apply_a, const Vector& b, double c, double s,
                          double eta, const Vector& x, Solve&& solve) {
  Vector z = solve(s, eta, x);
  return 0.5 * z.dot(apply_a(z)) + b.dot(z) + c;
}

}  // namespace proxpt
