#include "proxpt/prox_quadratic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "proxpt/solve1d.hpp"

namespace proxpt {

double QuadraticOracle::dual_deriv(double, double, const Vector&) const {
  throw CapabilityError("QuadraticOracle: dual_deriv not supported by this oracle");
}

StepSizeCheck validate_step_size(double eta, const QuadraticOracle& oracle) {
  if (!(eta > 0)) throw std::invalid_argument("validate_step_size: eta must be positive");
  double bound = oracle.max_step_size();
  if (!(eta < bound)) {
    std::ostringstream msg;
    msg << "step size " << eta << " violates the oracle stability bound "
        << bound << " (need eta < bound)";
    throw StepSizeError(msg.str(), bound);
  }
  return eta >= 0.99 * bound ? StepSizeCheck::near_bound : StepSizeCheck::ok;
}

double solve_quad_dual(const OuterFunction& h, const QuadraticOracle& oracle,
                       double eta, const Vector& x) {
  auto neg_q = [&](double s) {
    return h.conjugate(s) - oracle.dual_eval(s, eta, x);
  };
  Interval dom = h.conjugate_domain();
  if (dom.compact()) {
    return minimize_bounded(neg_q, dom.lo, dom.hi).x;
  }
  if (!oracle.has_dual_deriv()) {
    throw CapabilityError(
        "solve_quad_dual: non-compact conjugate domain requires an oracle "
        "with dual_deriv");
  }
  auto q_prime = [&](double s) {
    return oracle.dual_deriv(s, eta, x) - h.conjugate_prime(s);
  };
  double lo = 0, hi = 0;
  bool have_lo = false, have_hi = false;
  for (int k = 0; k < OuterFunction::endpoint_terms && !have_lo; ++k) {
    double s = h.lower_endpoint_term(k);
    double v = q_prime(s);
    if (v == 0) return s;
    if (v > 0) {
      lo = s;
      have_lo = true;
    }
  }
  for (int k = 0; k < OuterFunction::endpoint_terms && !have_hi; ++k) {
    double s = h.upper_endpoint_term(k);
    double v = q_prime(s);
    if (v == 0) return s;
    if (v < 0) {
      hi = s;
      have_hi = true;
    }
  }
  if (!have_lo || !have_hi) {
    throw SolverFailure(
        "solve_quad_dual: endpoint scan exhausted without bracketing the "
        "dual maximizer");
  }
  return minimize_bounded(neg_q, lo, hi).x;
}

ConvexLipschitzOnQuadratic::ConvexLipschitzOnQuadratic(OuterFunction h, Vector x0)
    : h_(h), x_(std::move(x0)) {
  if (!std::isfinite(h.lipschitz())) {
    throw CapabilityError(
        "ConvexLipschitzOnQuadratic: the outer function must be Lipschitz");
  }
}

double ConvexLipschitzOnQuadratic::step(double eta, const QuadraticOracle& oracle) {
  validate_step_size(eta, oracle);
  double loss = h_.eval(oracle.eval(x_));
  double s_star = solve_quad_dual(h_, oracle, eta, x_);
  x_ = oracle.solve_system(s_star, eta, x_);
  return loss;
}

}  // namespace proxpt
