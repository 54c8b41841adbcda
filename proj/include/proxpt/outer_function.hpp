#pragma once

#include <cmath>
#include <limits>

#include "proxpt/errors.hpp"

namespace proxpt {

enum class OuterKind { half_squared, logistic, hinge, abs_value };

// Closed interval with possibly infinite endpoints.
struct Interval {
  double lo;
  double hi;
  bool compact() const { return std::isfinite(lo) && std::isfinite(hi); }
};

// A scalar convex outer function h together with the conjugate-side data the
// dual solvers need:
//   half_squared  h(z) = z^2/2        h*(s) = s^2/2        dom h* = R
//   logistic      h(z) = ln(1+e^z)    h*(s) = s ln s + (1-s) ln(1-s)   dom [0,1]
//   hinge         h(z) = max(z, 0)    h* = indicator of [0,1]
//   abs_value     h(z) = |z|          h* = indicator of [-1,1]
// Immutable value type; freely shareable across threads.
class OuterFunction {
 public:
  explicit OuterFunction(OuterKind kind) : kind_(kind) {}

  static OuterFunction half_squared() { return OuterFunction(OuterKind::half_squared); }
  static OuterFunction logistic() { return OuterFunction(OuterKind::logistic); }
  static OuterFunction hinge() { return OuterFunction(OuterKind::hinge); }
  static OuterFunction abs_value() { return OuterFunction(OuterKind::abs_value); }

  OuterKind kind() const { return kind_; }

  double eval(double z) const;

  // derivative of h; at the hinge/abs kink the subgradient 0 is used
  double deriv(double z) const;

  // Lipschitz constant of h; +infinity for half_squared
  double lipschitz() const;

  Interval conjugate_domain() const;
  bool conjugate_domain_compact() const { return conjugate_domain().compact(); }

  // whether h* is differentiable on the interior of its domain
  bool conjugate_differentiable() const;

  // h*(s); +infinity outside dom h*; indicator conjugates are 0 inside
  double conjugate(double s) const;

  // (h*)'(s) for s strictly inside dom h*; throws CapabilityError for the
  // indicator conjugates and std::domain_error on or outside the boundary
  double conjugate_prime(double s) const;

  // Endpoint-approach sequences for bracketing scans when dom h* is
  // unbounded: term k of the lower sequence is -2^k, of the upper +2^k,
  // k = 0 .. endpoint_terms-1. Throws CapabilityError for compact domains.
  double lower_endpoint_term(int k) const;
  double upper_endpoint_term(int k) const;
  static constexpr int endpoint_terms = 63;  // magnitudes capped at 2^62

  // maximizer of q(s) = -(alpha/2) s^2 + beta s - h*(s) over dom h*;
  // requires alpha >= 0
  double solve_scalar_dual(double alpha, double beta) const;

 private:
  OuterKind kind_;
};

}  // namespace proxpt
