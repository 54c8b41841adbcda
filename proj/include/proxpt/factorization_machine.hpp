#pragma once

#include <vector>

#include "proxpt/prox_quadratic.hpp"
#include "proxpt/types.hpp"

namespace proxpt {

// Parameter layout of a rank-k factorization machine on d features. The
// parameter vector stacks [w0, w (d entries), v1 ... vd] where the latent
// vectors v_i are the columns of a k x d matrix stored column-major, so
// total = 1 + d + k*d.
struct FMLayout {
  int features;  // d
  int rank;      // k

  int dim() const { return 1 + features * (1 + rank); }
};

void check_fm_layout(const FMLayout& layout);

// views into a parameter vector (decompose); concat is the inverse
inline double& fm_bias(Vector& x) { return x[0]; }
inline double fm_bias(const Vector& x) { return x[0]; }
inline Eigen::Ref<Vector> fm_linear(const FMLayout& layout, Vector& x) {
  return x.segment(1, layout.features);
}
inline Eigen::Ref<const Vector> fm_linear(const FMLayout& layout, const Vector& x) {
  return x.segment(1, layout.features);
}
inline Eigen::Map<Matrix> fm_latent(const FMLayout& layout, Vector& x) {
  return {x.data() + 1 + layout.features, layout.rank, layout.features};
}
inline Eigen::Map<const Matrix> fm_latent(const FMLayout& layout, const Vector& x) {
  return {x.data() + 1 + layout.features, layout.rank, layout.features};
}

Vector fm_concat(double w0, const Vector& w, const Matrix& v);

// model output w0 + <w, a> + sum_{i<j} a_i a_j <v_i, v_j>, computed via
// (1/2)[ ||V a||^2 - sum_i a_i^2 ||v_i||^2 ]
double fm_eval(const FMLayout& layout, const Vector& x, const Vector& a);

// Largest admissible step size for one observation:
// 1 / max{ ||a||_inf^2, ||a||_2^2 - (min nonzero a_i^2) }, +infinity for
// a = 0. The bracketed quantity dominates every eigenvalue of the pairwise
// curvature matrix, so any smaller step keeps the dual subproblem strictly
// concave. For 0/1 indicators with n ones this is 1/max{1, n-1}.
double fm_max_step(const Vector& a);

// Factors of the masked latent-block inverse (s A + I/eta)^{-1} restricted to
// the active features: the block equals (D + gamma r r') (x) I_k.
struct FMInverseFactors {
  Vector diag;   // D_ii = eta / (1 + eta y s a_i^2), in mask order
  Vector r;      // r_i  = eta a_i / (1 + eta y s a_i^2)
  double gamma;  // y s / (1 - sum_i eta y s a_i^2 / (1 + eta y s a_i^2))
};

// mask lists the active feature indices; requires eta < fm_max_step(a) and
// s in [0, 1] (the logistic conjugate domain)
FMInverseFactors fm_inverse_factors(const Vector& a, double y,
                                    const std::vector<int>& mask, double s,
                                    double eta);

// One CTR observation (a, y) with y in {-1, +1} as a quadratic oracle:
//   g(x) = -y * fm_eval(x, a) = (1/2) x'A x + b'x + 0
// with A = -y (a a' - diag(a a')) (x) I_k acting on the latent block and
// b = -y (1, a, 0). All queries touch only the active features, so they run
// in O(k * nnz(a)) after the O(d) scan at construction.
class FMCTROracle : public QuadraticOracle {
 public:
  FMCTROracle(FMLayout layout, Vector a, double y);

  double eval(const Vector& x) const override;
  double scalar() const override { return 0; }
  double dual_eval(double s, double eta, const Vector& x) const override;
  Vector solve_system(double s, double eta, const Vector& x) const override;
  double max_step_size() const override { return bound_; }
  // no dual_deriv capability: the logistic outer function's compact conjugate
  // domain means the bracketing path never needs it

  const std::vector<int>& mask() const { return mask_; }

 private:
  FMLayout layout_;
  Vector a_;
  double y_;
  std::vector<int> mask_;
  double bound_;

  struct Prepared {
    Vector inv_denom;  // 1 / (1 + eta y s a_i^2), mask order
    Vector u;          // a_i * inv_denom_i
    double gamma;
  };
  Prepared prepare(double s, double eta) const;
};

// one observation step of the CTR model: h = logistic on g(x) = -y * fm_eval
double fm_ctr_step(ConvexLipschitzOnQuadratic& opt, double eta,
                   const FMLayout& layout, const Vector& a, double y);

}  // namespace proxpt
