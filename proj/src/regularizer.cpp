#include "proxpt/regularizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace proxpt {

Regularizer::Regularizer(RegKind kind, double mu) : kind_(kind), mu_(mu) {
  if (mu < 0) throw std::invalid_argument("Regularizer: mu must be nonnegative");
  if (kind == RegKind::zero) mu_ = 0;
}

double Regularizer::eval(const Vector& x) const {
  switch (kind_) {
    case RegKind::zero:
      return 0;
    case RegKind::l1:
      return mu_ * x.lpNorm<1>();
    case RegKind::l2_squared:
      return 0.5 * mu_ * x.squaredNorm();
    case RegKind::l2_norm:
      return mu_ * x.norm();
  }
  return 0;
}

Vector Regularizer::prox(double eta, const Vector& x) const {
  if (!(eta > 0)) throw std::invalid_argument("Regularizer::prox: eta must be positive");
  switch (kind_) {
    case RegKind::zero:
      return x;
    case RegKind::l1: {
      double t = eta * mu_;
      Vector out(x.size());
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        double v = x[i];
        out[i] = v > t ? v - t : (v < -t ? v + t : 0.0);
      }
      return out;
    }
    case RegKind::l2_squared:
      return x / (1.0 + mu_ * eta);
    case RegKind::l2_norm: {
      double t = eta * mu_;
      if (t == 0) return x;
      double factor = 1.0 - t / std::max(t, x.norm());
      return factor * x;
    }
  }
  return x;
}

double Regularizer::envelope(double eta, const Vector& x) const {
  Vector p = prox(eta, x);
  return eval(p) + (p - x).squaredNorm() / (2.0 * eta);
}

}  // namespace proxpt
