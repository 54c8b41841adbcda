#pragma once

#include "proxpt/types.hpp"

namespace proxpt {

enum class RegKind { zero, l1, l2_squared, l2_norm };

// Regularizer catalogue with prox and Moreau envelope:
//   zero        r(x) = 0
//   l1          r(x) = mu * ||x||_1
//   l2_squared  r(x) = (mu/2) * ||x||_2^2
//   l2_norm     r(x) = mu * ||x||_2
// Immutable descriptor; all operations are pure.
class Regularizer {
 public:
  Regularizer() : kind_(RegKind::zero), mu_(0) {}
  Regularizer(RegKind kind, double mu);

  static Regularizer zero() { return {}; }
  static Regularizer l1(double mu) { return {RegKind::l1, mu}; }
  static Regularizer l2_squared(double mu) { return {RegKind::l2_squared, mu}; }
  static Regularizer l2_norm(double mu) { return {RegKind::l2_norm, mu}; }

  RegKind kind() const { return kind_; }
  double mu() const { return mu_; }

  double eval(const Vector& x) const;

  // argmin_u r(u) + (1/(2 eta)) ||u - x||^2, i.e. the prox of eta * r
  Vector prox(double eta, const Vector& x) const;

  // Moreau envelope value r(p) + (1/(2 eta)) ||p - x||^2 at p = prox(eta, x)
  double envelope(double eta, const Vector& x) const;

 private:
  RegKind kind_;
  double mu_;
};

}  // namespace proxpt
