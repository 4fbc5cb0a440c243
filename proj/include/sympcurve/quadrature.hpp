#pragma once

// Simpson quadrature, plain composite and adaptive.

#include <cmath>
#include <functional>

#include "sympcurve/errors.hpp"

namespace sympcurve {

// Composite Simpson with n nodes (n odd, >= 3).
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int n) {
  if (n < 3) n = 3;
  if (n % 2 == 0) ++n;
  double h = (b - a) / (n - 1);
  double s = f(a) + f(b);
  for (int i = 1; i < n - 1; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

namespace detail {
inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double fa, double fm,
                                   double fb, double whole, double tol,
                                   int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0) throw error("adaptive quadrature: max depth reached");
  if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol = 1e-12, int max_depth = 40) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace sympcurve
