#pragma once

// Phase portraits a = (g1, g3), b = (-g2, g4), the curve they assemble to,
// and d-pair witnesses (second-order special-affine deformations).

#include <array>
#include <cmath>
#include <vector>

#include "sympcurve/curve.hpp"
#include "sympcurve/fd.hpp"

namespace sympcurve {

using vec2 = std::array<double, 2>;

inline double wedge(const vec2& u, const vec2& v) {
  return u[0] * v[1] - u[1] * v[0];
}

inline double norm_2(const vec2& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1]); }

struct phase_portrait {
  double t0 = 0, h = 0;
  std::vector<vec2> a, b;
  double dpair_residual = 0;  // max |a' ^ a'' - b' ^ b''|

  int size() const { return int(a.size()); }
  double t(int i) const { return t0 + h * double(i); }
};

inline vec2 portrait_a(const vec4& x) { return {x[0], x[2]}; }
inline vec2 portrait_b(const vec4& x) { return {-x[1], x[3]}; }

// gamma_(a,b) = (a1, -b1, a2, b2)
inline vec4 curve_from_portraits(const vec2& a, const vec2& b) {
  return {a[0], -b[0], a[1], b[1]};
}

inline phase_portrait phase_portraits(const curve& c, double t_lo, double t_hi,
                                      int nsamples = 801) {
  phase_portrait p;
  p.t0 = t_lo;
  p.h = (t_hi - t_lo) / double(nsamples - 1);
  p.a.reserve(std::size_t(nsamples));
  p.b.reserve(std::size_t(nsamples));
  for (int i = 0; i < nsamples; ++i) {
    double t = p.t(i);
    curve_jet j = jet(c, t, 2);
    p.a.push_back(portrait_a(j[0]));
    p.b.push_back(portrait_b(j[0]));
    // a'^a'' - b'^b'' = Lambda(g', g'')
    double r = std::fabs(lambda(j[1], j[2]));
    p.dpair_residual = std::max(p.dpair_residual, r);
  }
  return p;
}

struct dpair_data {
  std::array<std::array<double, 2>, 2> A;  // det 1 for Lagrangian sources
  vec2 T;
  double det_A = 0;
};

namespace detail {

struct plane_jet {
  vec2 x, xp, xpp;
};

inline plane_jet plane_jet_at(const phase_portrait& p, bool first, double t) {
  const auto& pts = first ? p.a : p.b;
  int n = int(pts.size());
  double u = (t - p.t0) / p.h;
  int lo = std::clamp(int(std::lround(u)) - 3, 0, n - 7);
  std::vector<double> xs;
  for (int i = lo; i < lo + 7; ++i) xs.push_back(p.t0 + p.h * double(i));
  auto w = fd_weights(t, xs, 2);
  plane_jet out{};
  const vec2& ref = pts[std::size_t(lo + 3)];
  for (int i = 0; i < 7; ++i)
    for (int c = 0; c < 2; ++c) {
      double v = pts[std::size_t(lo + i)][std::size_t(c)];
      out.x[std::size_t(c)] += w[0][std::size_t(i)] * v;
      out.xp[std::size_t(c)] += w[1][std::size_t(i)] * (v - ref[std::size_t(c)]);
      out.xpp[std::size_t(c)] += w[2][std::size_t(i)] * (v - ref[std::size_t(c)]);
    }
  return out;
}

}  // namespace detail

// A = (b', b'') (a', a'')^{-1}, T = b - A a; errors on inflection points of a.
inline dpair_data dpair_witness(const phase_portrait& p, double t,
                                double tol = 1e-8) {
  if (p.size() < 7) throw invalid_parameters("portrait too short for a witness");
  if (t < p.t0 || t > p.t(p.size() - 1))
    throw out_of_range_error("dpair_witness: t outside the portrait window");
  detail::plane_jet a = detail::plane_jet_at(p, true, t);
  detail::plane_jet b = detail::plane_jet_at(p, false, t);
  double wa = wedge(a.xp, a.xpp);
  double scale = std::max({1.0, norm_2(a.xp), norm_2(a.xpp)});
  if (std::fabs(wa) <= tol * scale * scale * scale)
    throw inflection_point("dpair_witness: inflection of a at t = " +
                           std::to_string(t));
  // (a', a'')^{-1} = adj(a', a'') / wa
  dpair_data out;
  double inv = 1.0 / wa;
  // M = [b' b''] * [[a.xpp[1], -a.xpp[0]], [-a.xp[1], a.xp[0]]] * inv
  out.A[0][0] = (b.xp[0] * a.xpp[1] - b.xpp[0] * a.xp[1]) * inv;
  out.A[0][1] = (-b.xp[0] * a.xpp[0] + b.xpp[0] * a.xp[0]) * inv;
  out.A[1][0] = (b.xp[1] * a.xpp[1] - b.xpp[1] * a.xp[1]) * inv;
  out.A[1][1] = (-b.xp[1] * a.xpp[0] + b.xpp[1] * a.xp[0]) * inv;
  out.det_A = out.A[0][0] * out.A[1][1] - out.A[0][1] * out.A[1][0];
  out.T = {b.x[0] - (out.A[0][0] * a.x[0] + out.A[0][1] * a.x[1]),
           b.x[1] - (out.A[1][0] * a.x[0] + out.A[1][1] * a.x[1])};
  return out;
}

}  // namespace sympcurve
