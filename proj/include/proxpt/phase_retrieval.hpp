#pragma once

#include "proxpt/prox_quadratic.hpp"
#include "proxpt/types.hpp"

namespace proxpt {

// Quadratic oracle for one phase-retrieval observation (a, y), y >= 0:
//   g(x) = (a'x)^2 - y = (1/2) x'(2 a a')x + 0'x - y.
// The rank-one structure gives closed-form Sherman-Morrison solves, so every
// query is O(d). Intended for use with the abs_value outer function
// (dom h* = [-1, 1]); the step bound 1/(2||a||^2) keeps s A + I/eta positive
// definite on that range.
class PhaseRetrievalOracle : public QuadraticOracle {
 public:
  PhaseRetrievalOracle(Vector a, double y);

  double eval(const Vector& x) const override;
  double scalar() const override { return -y_; }
  double dual_eval(double s, double eta, const Vector& x) const override;
  Vector solve_system(double s, double eta, const Vector& x) const override;
  bool has_dual_deriv() const override { return true; }
  double dual_deriv(double s, double eta, const Vector& x) const override;
  double max_step_size() const override;

  const Vector& a() const { return a_; }
  double y() const { return y_; }

 private:
  Vector a_;
  double y_;
  double a_norm2_;
};

}  // namespace proxpt
