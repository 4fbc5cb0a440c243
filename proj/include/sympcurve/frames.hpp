#pragma once

// Moving frames for the three cross-sections on 4th-order jets of linearly
// full curves, and their Serret-Frenet (Maurer-Cartan) matrices K with
// d(rho~)/dt = rho~ K, rho~ = rho^{-1} the frame along the curve.

#include <cmath>
#include <string>

#include "sympcurve/curve.hpp"
#include "sympcurve/group.hpp"

namespace sympcurve {

enum class cross_section {
  generic,             // requires k1 != 0 (and phi != 0)
  minimal_lagrangian,  // requires k2 != 0 (and phi != 0); specializes to k1 = 0
  gram_schmidt,        // requires k2 != 0 (and phi != 0)
};

inline const char* to_string(cross_section s) {
  switch (s) {
    case cross_section::generic: return "generic";
    case cross_section::minimal_lagrangian: return "minimal";
    case cross_section::gram_schmidt: return "gram-schmidt";
  }
  return "?";
}

struct moving_frame {
  vec4 p{};
  mat4 E = mat4::identity();

  group_element as_group_element(double tol = 1e-9) const {
    return group_element(p, E, tol);
  }
  static moving_frame from_group_element(const group_element& g) {
    return {g.a, g.A};
  }
  vec4 basis(int i) const { return E.col(i); }
};

struct maurer_cartan_data {
  mat5 K;       // Serret-Frenet matrix: d(rho~)/dt = rho~ K
  double tau = 0;
  cross_section section = cross_section::minimal_lagrangian;
};

namespace detail {

inline void check_transverse(cross_section s, const invariant_derivs& d,
                             double scale) {
  double guard;
  const char* what;
  switch (s) {
    case cross_section::generic:
      guard = std::fabs(d.k1 * d.k1 * d.k1 * d.phi);
      what = "k1^3*phi";
      break;
    case cross_section::minimal_lagrangian:
      guard = std::fabs(d.k2 * d.phi);
      what = "k2*phi";
      break;
    case cross_section::gram_schmidt:
      guard = std::fabs(d.k2 * d.k2 * d.phi);
      what = "k2^2*phi";
      break;
  }
  if (!(guard > 1e-12 * std::max(1.0, scale)))
    throw section_not_transverse(std::string("cross-section not transverse: |") +
                                 what + "| = " + std::to_string(guard));
}

inline double jet_scale(const curve_jet& j) {
  double s = 1.0;
  for (int i = 1; i <= std::min(4, j.order()); ++i) s = std::max(s, norm_inf(j[i]));
  return s * s * s;
}

// Solve E * Nplus = Xplus for the frame basis, p = X^(0).
inline moving_frame frame_from_normalized(const curve_jet& j, const mat4& nplus) {
  mat4 xplus;
  for (int c = 0; c < 4; ++c) xplus.set_col(c, j[c + 1]);
  moving_frame f;
  f.p = j[0];
  f.E = xplus * inverse(nplus);
  return f;
}

}  // namespace detail

// Normalized-invariant matrix (iota X^1 .. iota X^4) of the chosen section.
inline mat4 normalized_jet_matrix(cross_section s, const invariant_derivs& d) {
  mat4 n;
  switch (s) {
    case cross_section::generic:
      // columns e1, (0,0,k1,0), (-k2/k1,-k1,k1p,0), (-k2p/k1,-2k1p,k1pp-k2,phi/k1^2)
      n(0, 0) = 1;
      n(2, 1) = d.k1;
      n(0, 2) = -d.k2 / d.k1;
      n(1, 2) = -d.k1;
      n(2, 2) = d.k1p;
      n(0, 3) = -d.k2p / d.k1;
      n(1, 3) = -2.0 * d.k1p;
      n(2, 3) = d.k1pp - d.k2;
      n(3, 3) = d.phi / (d.k1 * d.k1);
      break;
    case cross_section::minimal_lagrangian:
      // columns e1, (0,1,k1,0), (0,0,k1p,k2), (0,-k3/k2,k1pp-k2,k2p)
      n(0, 0) = 1;
      n(1, 1) = 1;
      n(2, 1) = d.k1;
      n(2, 2) = d.k1p;
      n(3, 2) = d.k2;
      n(1, 3) = -d.k3 / d.k2;
      n(2, 3) = d.k1pp - d.k2;
      n(3, 3) = d.k2p;
      break;
    case cross_section::gram_schmidt:
      // R^{-1} read off the Gram-Schmidt process
      n(0, 0) = d.k1p / d.k2;
      n(1, 0) = 1;
      n(2, 0) = -d.k1;
      n(0, 1) = 1;
      n(2, 2) = d.k2;
      n(0, 3) = -d.k3 / d.k2;
      n(2, 3) = d.k2p;
      n(3, 3) = -d.phi / d.k2;
      break;
  }
  return n;
}

inline moving_frame frame_for_section(cross_section s, const curve_jet& j) {
  if (j.order() < 4)
    throw order_too_high("moving frame needs a jet of order >= 4");
  curve_jet j5 = j;
  if (j.order() < 5) {
    // pad with a zero column: k4 is not needed by any frame
    j5.x.push_back(vec4{});
  }
  invariant_derivs d = invariant_derivs_at(j5);
  detail::check_transverse(s, d, detail::jet_scale(j));
  return detail::frame_from_normalized(j, normalized_jet_matrix(s, d));
}

inline moving_frame frame_minimal(const curve_jet& j) {
  return frame_for_section(cross_section::minimal_lagrangian, j);
}

inline moving_frame frame_generic(const curve_jet& j) {
  return frame_for_section(cross_section::generic, j);
}

// Symplectic Gram-Schmidt frame: Q = (X^1..X^4) R with R built from the
// pairings Lambda(X^i, X^j); equals frame_for_section(gram_schmidt, .) but
// assembled the way the process defines it.
inline moving_frame frame_gram_schmidt(const curve_jet& j) {
  if (j.order() < 4)
    throw order_too_high("moving frame needs a jet of order >= 4");
  double l12 = lambda(j[1], j[2]);
  double l13 = lambda(j[1], j[3]);
  double l14 = lambda(j[1], j[4]);
  double l23 = lambda(j[2], j[3]);
  double l24 = lambda(j[2], j[4]);
  double l34 = lambda(j[3], j[4]);
  // phi = det(X1..X4) = -Pf of the Lambda Gram matrix
  double phi = -l12 * l34 + l13 * l24 - l14 * l23;
  double scale = detail::jet_scale(j);
  if (!(std::fabs(l23 * l23 * phi) > 1e-12 * std::max(1.0, scale)))
    throw section_not_transverse("Gram-Schmidt section: |k2^2*phi| too small");
  mat4 r;
  r(0, 1) = 1;
  r(1, 0) = 1;
  r(1, 1) = -l13 / l23;
  r(1, 3) = -l34 / phi;
  r(2, 1) = l12 / l23;
  r(2, 2) = 1.0 / l23;
  r(2, 3) = l24 / phi;
  r(3, 3) = -l23 / phi;
  mat4 xplus;
  for (int c = 0; c < 4; ++c) xplus.set_col(c, j[c + 1]);
  moving_frame f;
  f.p = j[0];
  f.E = xplus * r;
  return f;
}

// Fifth-order invariant tau of the k2-sections (identical closed formula for
// minimal_lagrangian and gram_schmidt).
inline double tau_k2_section(const invariant_derivs& d) {
  double p2 = d.phi * d.phi;
  return (d.k2 * d.k2 * d.k4 - d.k2 * d.k2p * d.k3p + d.k2 * d.k3 * d.k2pp -
          d.k2 * d.k3 * d.k3) / p2;
}

// The long fifth-order invariant of the generic section, as printed with
// Eq. (previous:serret).
inline double tau_generic(const invariant_derivs& d) {
  double k1 = d.k1, k2 = d.k2, phi = d.phi;
  double p2 = phi * phi;
  double k12 = k1 * k1, k13 = k12 * k1, k14 = k12 * k12;
  return (k14 / p2) * d.k4 + (k13 * d.k2p / p2) * d.k1ppp -
         ((d.k1pp - k2) * k13 / p2) * d.k2pp + (2.0 * d.k1p * k12 / p2) * d.phip -
         2.0 * (k12 / phi) * (2.0 * d.k1pp - k2) -
         (k12 / p2) * (k2 * d.k1p * d.k2p + k2 * d.k1pp * d.k1pp -
                       2.0 * d.k1pp * k2 * k2 + 2.0 * d.k2p * d.k2p * k1 -
                       d.k1pp * d.k1p * d.k2p + k2 * k2 * k2);
}

inline maurer_cartan_data serret_matrix(cross_section s,
                                        const invariant_derivs& d) {
  detail::check_transverse(s, d, 1.0);
  maurer_cartan_data out;
  out.section = s;
  mat5& k = out.K;
  switch (s) {
    case cross_section::generic: {
      // Translation column as printed; the linear block enters the frame
      // equation with the opposite sign to the printed display (validated
      // against the finite-difference oracle, see frame tests).
      double tau = tau_generic(d);
      out.tau = tau;
      k(1, 0) = 1;
      k(1, 3) = -d.k2 / (d.k1 * d.k1);
      k(1, 4) = -1;
      k(2, 3) = -1;
      k(2, 4) = -tau;
      k(3, 1) = d.k1;
      k(4, 2) = -d.phi / (d.k1 * d.k1 * d.k1);
      break;
    }
    case cross_section::minimal_lagrangian: {
      double tau = tau_k2_section(d);
      out.tau = tau;
      k(1, 0) = 1;
      k(1, 2) = d.k1 * tau;
      k(1, 3) = -tau;
      k(1, 4) = d.k1p * tau / d.k2;
      k(2, 1) = 1;
      k(2, 2) = -d.k1 * d.k1p * tau / d.k2;
      k(2, 3) = d.k1p * tau / d.k2;
      k(2, 4) = -(d.k1p * d.k1p * tau + d.k3) / (d.k2 * d.k2);
      k(3, 1) = d.k1;
      k(3, 4) = -1;
      k(4, 2) = d.k2 + d.k1 * d.k1 * tau;
      k(4, 3) = -d.k1 * tau;
      k(4, 4) = d.k1 * d.k1p * tau / d.k2;
      break;
    }
    case cross_section::gram_schmidt: {
      double tau = tau_k2_section(d);
      out.tau = tau;
      double q = d.k2 * d.k2;
      k(1, 0) = d.k1p / d.k2;
      k(1, 2) = d.phi / q;
      k(1, 3) = -d.k3 / q;
      k(2, 0) = 1;
      k(2, 4) = -tau;
      k(3, 0) = -d.k1;
      k(3, 1) = d.k2;
      k(4, 2) = -d.k1 * d.phi / q;
      k(4, 3) = -d.phi / q;
      break;
    }
  }
  return out;
}

// Serret-Frenet matrix A(k) of the arc-length Lagrangian system (k1 = 0):
// p' = E1, E1' = E2, E2' = k2 E4, E3' = -tau E1, E4' = -(k3/k2^2) E2 - E3.
inline mat5 serret_matrix_lagrangian(double k2, double k3, double tau) {
  mat5 a;
  a(1, 0) = 1;
  a(1, 3) = -tau;
  a(2, 1) = 1;
  a(2, 4) = -k3 / (k2 * k2);
  a(3, 4) = -1;
  a(4, 2) = k2;
  return a;
}

// Constant-curvature generator (k2 = 1): tau = k4 - k3^2.
inline mat5 constant_curvature_generator(double k3, double k4) {
  return serret_matrix_lagrangian(1.0, k3, k4 - k3 * k3);
}

}  // namespace sympcurve
