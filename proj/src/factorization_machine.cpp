#include "proxpt/factorization_machine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "proxpt/errors.hpp"

namespace proxpt {

void check_fm_layout(const FMLayout& layout) {
  if (layout.features < 1) {
    throw std::invalid_argument("FMLayout: features must be >= 1");
  }
  if (layout.rank < 1) {
    throw std::invalid_argument("FMLayout: rank must be >= 1");
  }
}

Vector fm_concat(double w0, const Vector& w, const Matrix& v) {
  if (v.cols() != w.size()) {
    throw std::invalid_argument(
        "fm_concat: latent matrix must have one column per feature");
  }
  const auto d = w.size();
  const auto k = v.rows();
  Vector out(1 + d + k * d);
  out[0] = w0;
  out.segment(1, d) = w;
  Eigen::Map<Matrix>(out.data() + 1 + d, k, d) = v;
  return out;
}

double fm_eval(const FMLayout& layout, const Vector& x, const Vector& a) {
  check_fm_layout(layout);
  if (x.size() != layout.dim()) {
    throw std::invalid_argument("fm_eval: parameter vector has wrong size");
  }
  if (a.size() != layout.features) {
    throw std::invalid_argument("fm_eval: feature vector has wrong size");
  }
  const auto v = fm_latent(layout, x);
  double out = fm_bias(x);
  Vector va = Vector::Zero(layout.rank);
  double diag = 0;
  for (int i = 0; i < layout.features; ++i) {
    const double ai = a[i];
    if (ai == 0) continue;
    out += x[1 + i] * ai;
    va += ai * v.col(i);
    diag += ai * ai * v.col(i).squaredNorm();
  }
  return out + 0.5 * (va.squaredNorm() - diag);
}

double fm_max_step(const Vector& a) {
  // The pairwise curvature matrix is +/-(aa' - diag(a o a)). By Weyl's
  // inequality its spectrum lies in [-max_i a_i^2, ||a||^2 - min nonzero
  // a_i^2] (zero entries only contribute null directions), so the largest
  // admissible step is the reciprocal of the larger endpoint magnitude.
  // For 0/1 indicator rows with n ones this is 1/max{1, n-1}.
  double top = 0.0;
  double low = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    const double sq = a[i] * a[i];
    top = std::max(top, sq);
    low = std::min(low, sq);
  }
  if (top <= 0) return std::numeric_limits<double>::infinity();
  const double scale = std::max(top, a.squaredNorm() - low);
  return 1.0 / scale;
}

namespace {

void check_fm_dual_args(const Vector& a, double y, double s, double eta) {
  if (y != 1.0 && y != -1.0) {
    throw std::invalid_argument("factorization machine labels must be +1/-1");
  }
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::invalid_argument("dual variable must lie in [0, 1]");
  }
  if (!(eta > 0)) {
    throw std::invalid_argument("step size must be positive");
  }
  const double bound = fm_max_step(a);
  if (!(eta < bound)) {
    std::ostringstream msg;
    msg << "step size " << eta
        << " is not below the admissible bound " << bound
        << " for this observation";
    throw StepSizeError(msg.str(), bound);
  }
}

}  // namespace

FMInverseFactors fm_inverse_factors(const Vector& a, double y,
                                    const std::vector<int>& mask, double s,
                                    double eta) {
  check_fm_dual_args(a, y, s, eta);
  const auto m = static_cast<Eigen::Index>(mask.size());
  FMInverseFactors out;
  out.diag.resize(m);
  out.r.resize(m);
  double trace = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const int i = mask[static_cast<std::size_t>(j)];
    if (i < 0 || i >= a.size()) {
      throw std::invalid_argument("fm_inverse_factors: mask index out of range");
    }
    const double t = eta * y * s * a[i] * a[i];
    const double denom = 1.0 + t;
    out.diag[j] = eta / denom;
    out.r[j] = eta * a[i] / denom;
    trace += t / denom;
  }
  out.gamma = y * s / (1.0 - trace);
  return out;
}

FMCTROracle::FMCTROracle(FMLayout layout, Vector a, double y)
    : layout_(layout), a_(std::move(a)), y_(y) {
  check_fm_layout(layout_);
  if (a_.size() != layout_.features) {
    throw std::invalid_argument("FMCTROracle: feature vector has wrong size");
  }
  if (y_ != 1.0 && y_ != -1.0) {
    throw std::invalid_argument("FMCTROracle: label must be +1 or -1");
  }
  for (int i = 0; i < layout_.features; ++i) {
    if (a_[i] != 0) mask_.push_back(i);
  }
  bound_ = fm_max_step(a_);
}

double FMCTROracle::eval(const Vector& x) const {
  return -y_ * fm_eval(layout_, x, a_);
}

FMCTROracle::Prepared FMCTROracle::prepare(double s, double eta) const {
  check_fm_dual_args(a_, y_, s, eta);
  const auto m = static_cast<Eigen::Index>(mask_.size());
  Prepared p;
  p.inv_denom.resize(m);
  p.u.resize(m);
  double trace = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const double ai = a_[mask_[static_cast<std::size_t>(j)]];
    const double t = eta * y_ * s * ai * ai;
    p.inv_denom[j] = 1.0 / (1.0 + t);
    p.u[j] = ai * p.inv_denom[j];
    trace += t * p.inv_denom[j];
  }
  p.gamma = y_ * s / (1.0 - trace);
  return p;
}

Vector FMCTROracle::solve_system(double s, double eta, const Vector& x) const {
  if (x.size() != layout_.dim()) {
    throw std::invalid_argument("FMCTROracle: parameter vector has wrong size");
  }
  const Prepared p = prepare(s, eta);
  const double shift = eta * s * y_;
  Vector out = x;
  out[0] += shift;
  const auto v = fm_latent(layout_, x);
  auto v_out = fm_latent(layout_, out);
  const auto m = static_cast<Eigen::Index>(mask_.size());
  Vector vu = Vector::Zero(layout_.rank);
  for (Eigen::Index j = 0; j < m; ++j) {
    vu += p.u[j] * v.col(mask_[static_cast<std::size_t>(j)]);
  }
  const double ge = p.gamma * eta;
  for (Eigen::Index j = 0; j < m; ++j) {
    const int i = mask_[static_cast<std::size_t>(j)];
    out[1 + i] += shift * a_[i];
    v_out.col(i) = v.col(i) * p.inv_denom[j] + (ge * p.u[j]) * vu;
  }
  return out;
}

double FMCTROracle::dual_eval(double s, double eta, const Vector& x) const {
  if (x.size() != layout_.dim()) {
    throw std::invalid_argument("FMCTROracle: parameter vector has wrong size");
  }
  const Prepared p = prepare(s, eta);
  const double z0 = x[0] / eta + s * y_;
  double acc = eta * z0 * z0;
  const auto v = fm_latent(layout_, x);
  const auto m = static_cast<Eigen::Index>(mask_.size());
  Vector vu = Vector::Zero(layout_.rank);
  for (Eigen::Index j = 0; j < m; ++j) {
    const int i = mask_[static_cast<std::size_t>(j)];
    const double zi = x[1 + i] / eta + s * y_ * a_[i];
    acc += eta * zi * zi;
    acc += p.inv_denom[j] * v.col(i).squaredNorm() / eta;
    vu += p.u[j] * v.col(i);
  }
  acc += p.gamma * vu.squaredNorm();
  return -0.5 * acc + s * scalar();
}

double fm_ctr_step(ConvexLipschitzOnQuadratic& opt, double eta,
                   const FMLayout& layout, const Vector& a, double y) {
  FMCTROracle oracle(layout, a, y);
  return opt.step(eta, oracle);
}

}  // namespace proxpt
