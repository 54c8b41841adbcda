#include "proxpt/prox_linear.hpp"

#include <stdexcept>

#include "proxpt/solve1d.hpp"

namespace proxpt {

namespace {

void check_step_args(double eta, Eigen::Index a_dim, Eigen::Index x_dim) {
  if (!(eta > 0)) throw std::invalid_argument("step: eta must be positive");
  if (a_dim != x_dim) throw std::invalid_argument("step: dimension mismatch");
}

}  // namespace

ConvexOnLinear::ConvexOnLinear(OuterFunction h, Vector x0)
    : h_(h), x_(std::move(x0)) {}

double ConvexOnLinear::step(double eta, const Vector& a, double b) {
  check_step_args(eta, a.size(), x_.size());
  double beta = a.dot(x_) + b;
  double loss = h_.eval(beta);
  double a2 = a.squaredNorm();
  if (a2 == 0) return loss;  // null sample: x unchanged
  double s = h_.solve_scalar_dual(eta * a2, beta);
  x_ -= (eta * s) * a;
  return loss;
}

RegularizedConvexOnLinear::RegularizedConvexOnLinear(OuterFunction h,
                                                     Regularizer r, Vector x0)
    : h_(h), r_(r), x_(std::move(x0)) {
  if (!h.conjugate_domain_compact() && !h.conjugate_differentiable()) {
    throw CapabilityError(
        "RegularizedConvexOnLinear: non-compact conjugate domain requires a "
        "differentiable conjugate");
  }
}

double RegularizedConvexOnLinear::step(double eta, const Vector& a, double b) {
  check_step_args(eta, a.size(), x_.size());
  double beta = a.dot(x_) + b;
  double loss = h_.eval(beta) + r_.eval(x_);
  double a2 = a.squaredNorm();
  if (a2 == 0) return loss;  // null sample: x unchanged
  double alpha = eta * a2;

  auto neg_q = [&](double s) {
    Vector v = x_ - (eta * s) * a;
    return h_.conjugate(s) -
           (r_.envelope(eta, v) + beta * s - 0.5 * alpha * s * s);
  };

  double s_star = 0;
  Interval dom = h_.conjugate_domain();
  if (dom.compact()) {
    s_star = minimize_bounded(neg_q, dom.lo, dom.hi).x;
  } else {
    // bracket the maximizer by scanning the endpoint sequences with
    // q'(s) = a' prox_{eta r}(x_t - eta s a) - (h*)'(s) + b
    auto q_prime = [&](double s) {
      Vector v = x_ - (eta * s) * a;
      return a.dot(r_.prox(eta, v)) - h_.conjugate_prime(s) + b;
    };
    double lo = 0, hi = 0;
    bool have_lo = false, have_hi = false, exact = false;
    for (int k = 0; k < OuterFunction::endpoint_terms && !have_lo; ++k) {
      double s = h_.lower_endpoint_term(k);
      double v = q_prime(s);
      if (v == 0) {
        s_star = s;
        exact = true;
        break;
      }
      if (v > 0) {
        lo = s;
        have_lo = true;
      }
    }
    for (int k = 0; k < OuterFunction::endpoint_terms && !have_hi && !exact; ++k) {
      double s = h_.upper_endpoint_term(k);
      double v = q_prime(s);
      if (v == 0) {
        s_star = s;
        exact = true;
        break;
      }
      if (v < 0) {
        hi = s;
        have_hi = true;
      }
    }
    if (!exact) {
      if (!have_lo || !have_hi) {
        throw SolverFailure(
            "step: endpoint scan exhausted without bracketing the dual "
            "maximizer");
      }
      s_star = minimize_bounded(neg_q, lo, hi).x;
    }
  }

  x_ = r_.prox(eta, x_ - (eta * s_star) * a);
  return loss;
}

}  // namespace proxpt
