#include "proxpt/phase_retrieval.hpp"

#include <limits>
#include <stdexcept>
#include <utility>

namespace proxpt {

PhaseRetrievalOracle::PhaseRetrievalOracle(Vector a, double y)
    : a_(std::move(a)), y_(y), a_norm2_(a_.squaredNorm()) {
  if (y < 0) throw std::invalid_argument("PhaseRetrievalOracle: y must be nonnegative");
}

double PhaseRetrievalOracle::eval(const Vector& x) const {
  double t = a_.dot(x);
  return t * t - y_;
}

Vector PhaseRetrievalOracle::solve_system(double s, double eta, const Vector& x) const {
  // Sherman-Morrison for (2 s a a' + I/eta)^{-1} (x/eta)
  double t = a_.dot(x);
  double denom = 1.0 + 2.0 * eta * s * a_norm2_;
  return x - (2.0 * eta * s * t / denom) * a_;
}

double PhaseRetrievalOracle::dual_eval(double s, double eta, const Vector& x) const {
  return -0.5 * (x / eta).dot(solve_system(s, eta, x)) - s * y_;
}

double PhaseRetrievalOracle::dual_deriv(double s, double eta, const Vector& x) const {
  double t = a_.dot(solve_system(s, eta, x));
  return t * t - y_;
}

double PhaseRetrievalOracle::max_step_size() const {
  if (a_norm2_ == 0) return std::numeric_limits<double>::infinity();
  return 1.0 / (2.0 * a_norm2_);
}

}  // namespace proxpt
