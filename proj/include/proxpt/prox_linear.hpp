#pragma once

#include "proxpt/outer_function.hpp"
#include "proxpt/regularizer.hpp"
#include "proxpt/types.hpp"

namespace proxpt {

// Incremental proximal-point optimizer for losses h(a'x + b):
// each step computes x+ = argmin_x h(a'x + b) + (1/(2 eta)) ||x - x_t||^2
// exactly, via the 1-D dual max_s -(eta ||a||^2 / 2) s^2 + (a'x_t + b) s - h*(s)
// and the recovery x+ = x_t - eta s* a.
class ConvexOnLinear {
 public:
  ConvexOnLinear(OuterFunction h, Vector x0);

  // returns the loss h(a'x + b) at the pre-step parameters
  double step(double eta, const Vector& a, double b);

  const Vector& x() const { return x_; }
  const OuterFunction& h() const { return h_; }

 private:
  OuterFunction h_;
  Vector x_;
};

// Incremental proximal-point optimizer for losses h(a'x + b) + r(x):
// the dual is q(s) = M_{eta r}(x_t - eta s a) + (a'x_t + b) s
//                    - (eta ||a||^2 / 2) s^2 - h*(s)
// (M is the Moreau envelope of r), maximized over dom h*; the primal update
// is x+ = prox_{eta r}(x_t - eta s* a).
class RegularizedConvexOnLinear {
 public:
  RegularizedConvexOnLinear(OuterFunction h, Regularizer r, Vector x0);

  // returns h(a'x + b) + r(x) at the pre-step parameters
  double step(double eta, const Vector& a, double b);

  const Vector& x() const { return x_; }
  const OuterFunction& h() const { return h_; }
  const Regularizer& r() const { return r_; }

 private:
  OuterFunction h_;
  Regularizer r_;
  Vector x_;
};

}  // namespace proxpt
