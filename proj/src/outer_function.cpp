#include "proxpt/outer_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "proxpt/solve1d.hpp"

namespace proxpt {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double stable_sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double OuterFunction::eval(double z) const {
  switch (kind_) {
    case OuterKind::half_squared:
      return 0.5 * z * z;
    case OuterKind::logistic:
      // ln(1+e^z) = max(z,0) + ln(1+e^{-|z|}): never overflows
      return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
    case OuterKind::hinge:
      return std::max(z, 0.0);
    case OuterKind::abs_value:
      return std::abs(z);
  }
  return 0;
}

double OuterFunction::deriv(double z) const {
  switch (kind_) {
    case OuterKind::half_squared:
      return z;
    case OuterKind::logistic:
      return stable_sigmoid(z);
    case OuterKind::hinge:
      return z > 0 ? 1.0 : 0.0;
    case OuterKind::abs_value:
      return z > 0 ? 1.0 : (z < 0 ? -1.0 : 0.0);
  }
  return 0;
}

double OuterFunction::lipschitz() const {
  return kind_ == OuterKind::half_squared ? inf : 1.0;
}

Interval OuterFunction::conjugate_domain() const {
  switch (kind_) {
    case OuterKind::half_squared:
      return {-inf, inf};
    case OuterKind::logistic:
    case OuterKind::hinge:
      return {0.0, 1.0};
    case OuterKind::abs_value:
      return {-1.0, 1.0};
  }
  return {0, 0};
}

bool OuterFunction::conjugate_differentiable() const {
  return kind_ == OuterKind::half_squared || kind_ == OuterKind::logistic;
}

double OuterFunction::conjugate(double s) const {
  switch (kind_) {
    case OuterKind::half_squared:
      return 0.5 * s * s;
    case OuterKind::logistic:
      if (s < 0 || s > 1) return inf;
      if (s == 0 || s == 1) return 0.0;  // 0 ln 0 == 0
      return s * std::log(s) + (1.0 - s) * std::log1p(-s);
    case OuterKind::hinge:
      return (s < 0 || s > 1) ? inf : 0.0;
    case OuterKind::abs_value:
      return (s < -1 || s > 1) ? inf : 0.0;
  }
  return 0;
}

double OuterFunction::conjugate_prime(double s) const {
  switch (kind_) {
    case OuterKind::half_squared:
      return s;
    case OuterKind::logistic:
      if (s <= 0 || s >= 1) {
        throw std::domain_error(
            "conjugate_prime: logistic conjugate derivative needs s strictly "
            "inside (0, 1)");
      }
      return std::log(s) - std::log1p(-s);
    case OuterKind::hinge:
    case OuterKind::abs_value:
      throw CapabilityError(
          "conjugate_prime: indicator conjugate is not differentiable");
  }
  return 0;
}

double OuterFunction::lower_endpoint_term(int k) const {
  if (conjugate_domain_compact()) {
    throw CapabilityError("endpoint sequences exist only for non-compact conjugate domains");
  }
  if (k < 0 || k >= endpoint_terms) {
    throw std::out_of_range("lower_endpoint_term: k out of range");
  }
  return -std::ldexp(1.0, k);
}

double OuterFunction::upper_endpoint_term(int k) const {
  if (conjugate_domain_compact()) {
    throw CapabilityError("endpoint sequences exist only for non-compact conjugate domains");
  }
  if (k < 0 || k >= endpoint_terms) {
    throw std::out_of_range("upper_endpoint_term: k out of range");
  }
  return std::ldexp(1.0, k);
}

double OuterFunction::solve_scalar_dual(double alpha, double beta) const {
  if (alpha < 0) {
    throw std::invalid_argument("solve_scalar_dual: alpha must be nonnegative");
  }
  switch (kind_) {
    case OuterKind::half_squared:
      return beta / (1.0 + alpha);
    case OuterKind::hinge:
      if (alpha == 0) return beta > 0 ? 1.0 : 0.0;
      return std::clamp(beta / alpha, 0.0, 1.0);
    case OuterKind::abs_value:
      if (alpha == 0) return beta > 0 ? 1.0 : (beta < 0 ? -1.0 : 0.0);
      return std::clamp(beta / alpha, -1.0, 1.0);
    case OuterKind::logistic: {
      // root of the strictly decreasing q'(s) = -alpha s + beta + ln(1-s) - ln s
      auto qp = [alpha, beta](double s) {
        return -alpha * s + beta + std::log1p(-s) - std::log(s);
      };
      double lo = 0, hi = 0;
      bool have_lo = false, have_hi = false;
      for (int k = 1; k <= 60 && !have_lo; ++k) {
        double s = std::ldexp(1.0, -k);
        double v = qp(s);
        if (v == 0) return s;
        if (v > 0) {
          lo = s;
          have_lo = true;
        }
      }
      for (int k = 1; k <= 60 && !have_hi; ++k) {
        double s = 1.0 - std::ldexp(1.0, -k);
        double v = qp(s);
        if (v == 0) return s;
        if (v < 0) {
          hi = s;
          have_hi = true;
        }
      }
      if (!have_lo || !have_hi) {
        throw SolverFailure(
            "solve_scalar_dual(logistic): endpoint scan (k <= 60) found no "
            "sign change; dual maximizer too close to {0, 1}");
      }
      return bisect_root(qp, Bracket{lo, hi, 1e-12, 200});
    }
  }
  return 0;
}

}  // namespace proxpt
