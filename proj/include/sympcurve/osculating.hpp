#pragma once

// Null-curve check for the osculating curve d(t) = [g' ^ g''] of a
// non-degenerate Lagrangian curve: complete (g', g'') to a symplectic frame,
// pull back the eta-block of E^{-1} E' and report the conformal null
// residual c11 c22 - c21^2 together with the non-degeneracy witness.

#include <cmath>
#include <limits>

#include "sympcurve/curve.hpp"
#include "sympcurve/frames.hpp"

namespace sympcurve {

struct osculating_point {
  double c11 = 0, c21 = 0, c22 = 0;
  double null_residual() const { return c11 * c22 - c21 * c21; }
  double magnitude() const { return c11 * c11 + c22 * c22 + c21 * c21; }
};

struct osculating_report {
  double max_null_residual = 0;
  double min_magnitude = std::numeric_limits<double>::infinity();
};

// Second-order frame completion (E1, E2) = (g', g'') -> Sp(4,R); exact for
// Lagrangian jets, rejected otherwise.
inline moving_frame second_order_frame(const curve_jet& j, double tol = 1e-9) {
  if (j.order() < 4) throw order_too_high("second_order_frame needs order >= 4");
  double k1 = lambda(j[1], j[2]);
  double k1p = lambda(j[1], j[3]);
  double k2 = lambda(j[2], j[3]);
  double k2p = lambda(j[2], j[4]);
  double k3 = lambda(j[3], j[4]);
  mat4 m;
  for (int c = 0; c < 4; ++c) m.set_col(c, j[c + 1]);
  double phi = det(m);
  double scale = std::max({1.0, norm(j[2]), norm(j[3])});
  if (!(std::fabs(k2) > 1e-12 * scale * scale) || !(std::fabs(phi) > 1e-12))
    throw frame_completion_failed("degenerate jet: k2 or phi vanishes");
  moving_frame f;
  f.p = j[0];
  f.E.set_col(0, j[1]);
  f.E.set_col(1, j[2]);
  vec4 e3 = (1.0 / phi) * ((-k3) * j[2] + k2p * j[3] + (-k2) * j[4]);
  f.E.set_col(2, e3);
  f.E.set_col(3, (1.0 / k2) * j[3]);
  (void)k1;
  (void)k1p;
  double defect = symplectic_defect_rel(f.E);
  if (defect > tol)
    throw frame_completion_failed("completion is not symplectic (curve not "
                                  "Lagrangian?): defect " + std::to_string(defect));
  return f;
}

inline osculating_point osculating_at(const curve& c, double t) {
  curve_jet j = jet(c, t, 5);
  moving_frame f = second_order_frame(j);
  invariant_derivs d = invariant_derivs_at(j);
  // derivatives of the completion columns
  mat4 ep;
  ep.set_col(0, j[2]);
  ep.set_col(1, j[3]);
  {
    // E3 = (-k3 X2 + k2' X3 - k2 X4)/phi
    vec4 num = (-d.k3) * j[2] + d.k2p * j[3] + (-d.k2) * j[4];
    vec4 nump = (-d.k3p) * j[2] + (d.k2pp - d.k3) * j[3] + (-d.k2) * j[5];
    ep.set_col(2, (1.0 / d.phi) * nump - (d.phip / (d.phi * d.phi)) * num);
  }
  {
    // E4 = X3 / k2
    ep.set_col(3, (1.0 / d.k2) * j[4] - (d.k2p / (d.k2 * d.k2)) * j[3]);
  }
  mat4 theta = inverse(f.E) * ep;
  osculating_point out;
  out.c11 = theta(2, 0);
  out.c21 = 0.5 * (theta(2, 1) + theta(3, 0));
  out.c22 = theta(3, 1);
  return out;
}

inline osculating_report osculating_null_check(const curve& c, double a,
                                               double b, int nsamples = 201) {
  osculating_report r;
  for (int i = 0; i < nsamples; ++i) {
    double t = a + (b - a) * double(i) / double(nsamples - 1);
    osculating_point p = osculating_at(c, t);
    r.max_null_residual = std::max(r.max_null_residual, std::fabs(p.null_residual()));
    r.min_magnitude = std::min(r.min_magnitude, p.magnitude());
  }
  return r;
}

}  // namespace sympcurve
