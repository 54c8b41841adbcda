#include "proxpt/minibatch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace proxpt {

CholeskyFactor::CholeskyFactor(const Matrix& spd) {
  if (spd.rows() != spd.cols()) {
    throw std::invalid_argument("CholeskyFactor: matrix must be square");
  }
  Eigen::Index n = spd.rows();
  l_ = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double diag = spd(j, j);
    for (Eigen::Index k = 0; k < j; ++k) diag -= l_(j, k) * l_(j, k);
    if (!(diag > 0)) {
      throw SolverFailure("CholeskyFactor: matrix is not positive definite");
    }
    l_(j, j) = std::sqrt(diag);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double v = spd(i, j);
      for (Eigen::Index k = 0; k < j; ++k) v -= l_(i, k) * l_(j, k);
      l_(i, j) = v / l_(j, j);
    }
  }
}

Vector CholeskyFactor::solve(const Vector& rhs) const {
  Eigen::Index n = l_.rows();
  if (rhs.size() != n) {
    throw std::invalid_argument("CholeskyFactor::solve: dimension mismatch");
  }
  Vector y(n);
  for (Eigen::Index i = 0; i < n; ++i) {  // forward: L y = rhs
    double v = rhs[i];
    for (Eigen::Index k = 0; k < i; ++k) v -= l_(i, k) * y[k];
    y[i] = v / l_(i, i);
  }
  Vector z(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {  // backward: L' z = y
    double v = y[i];
    for (Eigen::Index k = i + 1; k < n; ++k) v -= l_(k, i) * z[k];
    z[i] = v / l_(i, i);
  }
  return z;
}

Vector solve_dual_halfsq(const Matrix& p, const Vector& c) {
  Eigen::Index m = c.size();
  if (p.cols() != m) throw std::invalid_argument("solve_dual_halfsq: shape mismatch");
  Matrix q = p.transpose() * p;
  q.diagonal().array() += static_cast<double>(m);
  return CholeskyFactor(q).solve(c);
}

namespace {

// Cyclic coordinate ascent shared by the hinge and logistic duals.
// update(i, qii, lin) returns the maximizer of the coordinate restriction
// -(qii/2) t^2 + lin * t - (coordinate conjugate term) over the coordinate's
// range, where lin = c_i - sum_{j != i} Q_ij s_j.
template <typename Update>
Vector coordinate_ascent(const Matrix& q, const Vector& c, Vector s,
                         const char* what, Update&& update) {
  Eigen::Index m = c.size();
  for (int sweep = 0; sweep < 500; ++sweep) {
    double delta = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
      double off = q.row(i).dot(s) - q(i, i) * s[i];
      double next = update(q(i, i), c[i] - off);
      delta = std::max(delta, std::abs(next - s[i]));
      s[i] = next;
    }
    if (delta <= 1e-10) return s;
  }
  throw SolverFailure(std::string(what) + ": coordinate ascent exceeded 500 sweeps",
                      std::vector<double>(s.data(), s.data() + s.size()));
}

}  // namespace

Vector solve_dual_box_qp(const Matrix& p, const Vector& c) {
  Eigen::Index m = c.size();
  if (p.cols() != m) throw std::invalid_argument("solve_dual_box_qp: shape mismatch");
  Matrix q = p.transpose() * p;
  double ub = 1.0 / static_cast<double>(m);
  return coordinate_ascent(
      q, c, Vector::Zero(m), "solve_dual_box_qp",
      [ub](double qii, double lin) {
        if (qii > 0) return std::clamp(lin / qii, 0.0, ub);
        // degenerate coordinate (zero-norm column): the restriction is
        // linear, so an endpoint is optimal; ties resolve to 0
        return lin > 0 ? ub : 0.0;
      });
}

Vector solve_dual_entropic(const Matrix& p, const Vector& c) {
  Eigen::Index m = c.size();
  if (p.cols() != m) throw std::invalid_argument("solve_dual_entropic: shape mismatch");
  Matrix q = p.transpose() * p;
  double dm = static_cast<double>(m);
  OuterFunction logistic = OuterFunction::logistic();
  // In u = m s_i the coordinate restriction is (1/m) of
  // -(qii/(2m)) u^2 + lin u - h*(u), the scalar logistic dual.
  return coordinate_ascent(q, c, Vector::Constant(m, 0.5 / dm),
                           "solve_dual_entropic", [&](double qii, double lin) {
                             return logistic.solve_scalar_dual(qii / dm, lin) / dm;
                           });
}

MiniBatchConvexOnLinear::MiniBatchConvexOnLinear(OuterFunction h, Vector x0)
    : h_(h), x_(std::move(x0)) {
  switch (h.kind()) {
    case OuterKind::half_squared:
    case OuterKind::logistic:
    case OuterKind::hinge:
      break;
    default:
      throw CapabilityError(
          "MiniBatchConvexOnLinear: supported outer functions are "
          "half_squared, logistic and hinge");
  }
}

Vector MiniBatchConvexOnLinear::step(double eta, const Matrix& a, const Vector& b) {
  if (!(eta > 0)) throw std::invalid_argument("step: eta must be positive");
  Eigen::Index m = a.rows();
  if (m < 1 || m > max_batch) {
    throw std::invalid_argument("step: batch size must be in [1, 128]");
  }
  if (a.cols() != x_.size() || b.size() != m) {
    throw std::invalid_argument("step: dimension mismatch");
  }
  Vector c = a * x_ + b;
  Vector losses(m);
  for (Eigen::Index i = 0; i < m; ++i) losses[i] = h_.eval(c[i]);
  Matrix p = std::sqrt(eta) * a.transpose();
  Vector s;
  switch (h_.kind()) {
    case OuterKind::half_squared:
      s = solve_dual_halfsq(p, c);
      break;
    case OuterKind::hinge:
      s = solve_dual_box_qp(p, c);
      break;
    case OuterKind::logistic:
      s = solve_dual_entropic(p, c);
      break;
    default:
      throw CapabilityError("step: unsupported outer function");
  }
  x_ -= eta * (a.transpose() * s);
  return losses;
}

}  // namespace proxpt
