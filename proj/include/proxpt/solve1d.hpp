#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "proxpt/errors.hpp"

namespace proxpt {

// Search interval plus stopping parameters for the 1-D solvers.
struct Bracket {
  double lo;
  double hi;
  double tol = 1e-12;
  int max_iter = 200;
};

inline void check_bracket(const Bracket& b) {
  if (!(b.lo < b.hi)) throw std::invalid_argument("Bracket: need lo < hi");
  if (!(b.tol > 0)) throw std::invalid_argument("Bracket: tol must be positive");
  if (b.max_iter < 1) throw std::invalid_argument("Bracket: max_iter must be positive");
}

// Bisection for a root of a strictly decreasing f with f(lo) > 0 > f(hi).
// An endpoint that is an exact root is returned immediately, as is any
// midpoint with f(mid) == 0. Otherwise the bracket is halved until its width
// is <= tol and the final midpoint is returned.
template <typename F>
double bisect_root(F&& f, Bracket bracket) {
  check_bracket(bracket);
  double lo = bracket.lo, hi = bracket.hi;
  double flo = f(lo);
  if (flo == 0) return lo;
  double fhi = f(hi);
  if (fhi == 0) return hi;
  if (!(flo > 0) || !(fhi < 0)) {
    throw std::invalid_argument("bisect_root: requires f(lo) > 0 > f(hi)");
  }
  for (int it = 0; it < bracket.max_iter && hi - lo > bracket.tol; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;  // bracket at floating-point resolution
    double fm = f(mid);
    if (fm == 0) return mid;
    if (fm > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo > bracket.tol) {
    throw SolverFailure("bisect_root: max_iter exceeded before reaching tol");
  }
  return 0.5 * (lo + hi);
}

struct MinimizeResult {
  double x;        // approximate minimizer
  double value;    // f(x)
  bool converged;  // false when the iteration cap was hit first
};

// Derivative-free minimization of a unimodal f over [lo, hi]: golden-section
// steps with a parabolic-fit acceptance test (classical Brent structure).
// Never evaluates f outside [lo, hi]. If max_iter is exhausted the best point
// seen so far is returned with converged = false.
template <typename F>
MinimizeResult minimize_bounded(F&& f, Bracket bracket) {
  check_bracket(bracket);
  constexpr double golden = 0.3819660112501051;  // (3 - sqrt 5)/2
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double a = bracket.lo, b = bracket.hi;
  double x = a + golden * (b - a);
  double w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0, e = 0;
  for (int it = 0; it < bracket.max_iter; ++it) {
    double m = 0.5 * (a + b);
    double tol1 = eps * std::abs(x) + bracket.tol / 3.0;
    double tol2 = 2.0 * tol1;
    if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) return {x, fx, true};
    double p = 0, q = 0, r = 0;
    bool take_golden = true;
    if (std::abs(e) > tol1) {
      // parabola through (x, fx), (w, fw), (v, fv)
      r = (x - w) * (fx - fv);
      q = (x - v) * (fx - fw);
      p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0) p = -p;
      q = std::abs(q);
      double e_prev = e;
      e = d;
      // accept only if the step stays inside (a, b) and shrinks fast enough
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) &&
          p < q * (b - x)) {
        take_golden = false;
        d = p / q;
        double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = (m > x) ? tol1 : -tol1;
      }
    }
    if (take_golden) {
      e = (x < m) ? b - x : a - x;
      d = golden * e;
    }
    double u = (std::abs(d) >= tol1) ? x + d : x + ((d > 0) ? tol1 : -tol1);
    double fu = f(u);
    if (fu <= fx) {
      if (u < x) {
        b = x;
      } else {
        a = x;
      }
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) {
        a = u;
      } else {
        b = u;
      }
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, fx, false};
}

template <typename F>
MinimizeResult minimize_bounded(F&& f, double lo, double hi, double tol = 1e-10,
                                int max_iter = 200) {
  return minimize_bounded(static_cast<F&&>(f), Bracket{lo, hi, tol, max_iter});
}

}  // namespace proxpt
