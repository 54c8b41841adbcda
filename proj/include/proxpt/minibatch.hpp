#pragma once

#include "proxpt/outer_function.hpp"
#include "proxpt/types.hpp"

namespace proxpt {

// Dense Cholesky factorization M = L L' of a small SPD matrix, with
// forward/back substitution solves.
class CholeskyFactor {
 public:
  // throws SolverFailure on a non-positive pivot (matrix not positive definite)
  explicit CholeskyFactor(const Matrix& spd);

  // returns M^{-1} rhs
  Vector solve(const Vector& rhs) const;

  const Matrix& lower() const { return l_; }

 private:
  Matrix l_;
};

// Solvers for the mini-batch dual
//   max_s  -(1/2) ||P s||^2 + c's - (1/m) sum_i h*(m s_i)
// with P = sqrt(eta) A' (d x m) and c = A x_t + b. Each returns the dual
// maximizer s (m-vector).

// h = half_squared: the closed-form solution of (P'P + m I) s = c
Vector solve_dual_halfsq(const Matrix& p, const Vector& c);

// h = hinge: box-constrained QP over [0, 1/m]^m by cyclic coordinate ascent
// with closed-form clamped updates; stops when the sweep's max coordinate
// change is <= 1e-10, throws SolverFailure (with best iterate) after 500 sweeps
Vector solve_dual_box_qp(const Matrix& p, const Vector& c);

// h = logistic: cyclic coordinate ascent where each coordinate maximizes its
// strictly concave restriction by bisection on the partial derivative
// (solved in the rescaled variable u = m s_i); init s_i = 1/(2m), same
// stopping rule as the box QP
Vector solve_dual_entropic(const Matrix& p, const Vector& c);

// Mini-batch incremental proximal-point optimizer for
//   f(x) = (1/m) sum_i h(a_i'x + b_i),
// supporting half_squared, logistic and hinge outer functions.
class MiniBatchConvexOnLinear {
 public:
  static constexpr int max_batch = 128;

  MiniBatchConvexOnLinear(OuterFunction h, Vector x0);

  // rows of a are the samples a_i'; returns the m per-sample losses
  // h(a_i'x + b_i) at the pre-step parameters
  Vector step(double eta, const Matrix& a, const Vector& b);

  const Vector& x() const { return x_; }

 private:
  OuterFunction h_;
  Vector x_;
};

}  // namespace proxpt
