#pragma once

// Lagrangian torus immersions f(s,theta) = g(s) + x E2 + c(z) E3 + y E4
// molded from a closed constant-curvature directrix and a closed unit-speed
// profile on the quadric Q_h : x^2 + k3 y^2 - z^2 = h.

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <vector>

#include "sympcurve/classify.hpp"
#include "sympcurve/curve.hpp"
#include "sympcurve/frames.hpp"

namespace sympcurve {

struct quadric_profile {
  double h = 0;
  double k3 = 0;
  int branch = +1;  // sign of z along the trajectory
  // unit-speed closed curve on Q_h; jets in the arc parameter
  std::function<std::array<taylor, 3>(double theta, int order)> alpha;
  double length = 0;  // l_alpha
};

// Constant-z planar section of Q_h (an ellipse x^2 + k3 y^2 = h + z0^2),
// reparametrized to unit Euclidean speed.
inline quadric_profile make_profile(double h, double k3, double z0) {
  if (!(k3 > 0)) throw invalid_parameters("make_profile: needs k3 > 0");
  if (z0 == 0.0)
    throw empty_branch(h == 0.0
                           ? "the vertex of the cone is excluded"
                           : "z = 0 sections do not lie in a single branch");
  double r2 = h + z0 * z0;
  if (!(r2 > 0))
    throw empty_branch("no closed section: h + z0^2 = " + std::to_string(r2) +
                       " <= 0");
  double a = std::sqrt(r2);            // x semi-axis
  double b = std::sqrt(r2 / k3);       // y semi-axis
  // cumulative Euclidean arc length of (a cos, b sin) over [0, 2pi]
  auto speed = [a, b](double psi) {
    double sn = std::sin(psi), cs = std::cos(psi);
    return std::sqrt(a * a * sn * sn + b * b * cs * cs);
  };
  const int panels = 4096;
  auto table = std::make_shared<std::vector<double>>(std::size_t(panels) + 1, 0.0);
  static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
  static const double gw[5] = {0.2369268850561891, 0.4786286704993665,
                               0.5688888888888889, 0.4786286704993665,
                               0.2369268850561891};
  double hp = 2.0 * std::numbers::pi / panels;
  for (int i = 0; i < panels; ++i) {
    double mid = (double(i) + 0.5) * hp, half = 0.5 * hp;
    double acc = 0;
    for (int q = 0; q < 5; ++q) acc += gw[q] * speed(mid + half * gx[q]);
    (*table)[std::size_t(i) + 1] = (*table)[std::size_t(i)] + acc * half;
  }
  double total = table->back();

  quadric_profile out;
  out.h = h;
  out.k3 = k3;
  out.branch = z0 > 0 ? +1 : -1;
  out.length = total;
  out.alpha = [a, b, z0, speed, table, total, hp](double theta,
                                                  int order) -> std::array<taylor, 3> {
    // invert L(psi) = theta on [0, total]; evaluation at total is a genuine
    // closure check, it is not folded back to 0
    if (theta < -1e-9 || theta > total * (1.0 + 1e-9))
      throw out_of_range_error("profile parameter outside [0, length]");
    double th = std::clamp(theta, 0.0, total);
    std::size_t lo = 0, hi = table->size() - 1;
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if ((*table)[mid] <= th) lo = mid; else hi = mid;
    }
    double psi = hp * (double(lo) + (th - (*table)[lo]) /
                                        std::max(1e-300, (*table)[hi] - (*table)[lo]));
    for (int it = 0; it < 40; ++it) {
      // Newton on L(psi) - th with a 5-point Gauss panel from the table node
      double p0 = hp * double(lo);
      double mid = 0.5 * (p0 + psi), half = 0.5 * (psi - p0);
      double acc = 0;
      static const double ggx[5] = {-0.9061798459386640, -0.5384693101056831,
                                    0.0, 0.5384693101056831, 0.9061798459386640};
      static const double ggw[5] = {0.2369268850561891, 0.4786286704993665,
                                    0.5688888888888889, 0.4786286704993665,
                                    0.2369268850561891};
      for (int q = 0; q < 5; ++q) acc += ggw[q] * speed(mid + half * ggx[q]);
      double resid = (*table)[lo] + acc * half - th;
      double step = resid / speed(psi);
      psi -= step;
      if (std::fabs(step) < 1e-15) break;
    }
    // jets of psi(theta) from d(psi)/d(theta) = 1 / |beta'(psi)|
    taylor psi_jet(order);
    psi_jet.coeff_ref(0) = psi;
    for (int k = 0; k < order; ++k) {
      taylor cur = psi_jet.truncate(k);
      taylor g = sqrt(a * a * pow(sin(cur), 2) + b * b * pow(cos(cur), 2));
      taylor w = 1.0 / g;
      psi_jet.coeff_ref(k + 1) = w.coeff(k) / double(k + 1);
    }
    return {a * cos(psi_jet), b * sin(psi_jet),
            taylor::constant(z0, order)};
  };
  return out;
}

struct torus_mesh {
  int ns = 0, ntheta = 0;
  double ell_gamma = 0, ell_alpha = 0;
  double k3 = 0, k4 = 0, h = 0;
  std::vector<double> s, theta;        // grid lines
  std::vector<vec4> vertices;          // row-major: index = i * ntheta + j
  std::vector<double> residual;        // Lambda(ds f, dtheta f) per vertex
  double max_residual = 0;
  double defect_s = 0, defect_theta = 0;  // double-periodicity defects
  double min_immersion = 0;            // min singular value of (ds f, dth f)
  double max_quadric_residual = 0;
  double max_speed_defect = 0;         // | |alpha'| - 1 |

  const vec4& vertex(int i, int j) const {
    return vertices[std::size_t(i) * std::size_t(ntheta) + std::size_t(j)];
  }
};

inline torus_mesh molding_surface(const class_case& directrix,
                                  const quadric_profile& profile, int ns,
                                  int ntheta) {
  auto [k3, k4] = case_curvatures(directrix);
  if (!(k3 > 0) || !(k3 * k3 - k4 > 0))
    throw curvature_window_violated(
        "molding surface needs k3 > 0 and k3^2 - k4 > 0");
  if (std::fabs(profile.k3 - k3) > 1e-9 * std::max(1.0, std::fabs(k3)))
    throw invalid_parameters("profile was built for a different k3");
  auto knot = closedness(k3, k4);
  if (!knot) throw not_closed("directrix is not a closed curve");
  if (ns < 2 || ntheta < 2) throw invalid_parameters("grid must be >= 2x2");

  curve g = generate(directrix);
  const double lg = knot->period, la = profile.length;
  const double kk = k3 * k3 - k4, rk = std::sqrt(kk);

  torus_mesh mesh;
  mesh.ns = ns;
  mesh.ntheta = ntheta;
  mesh.ell_gamma = lg;
  mesh.ell_alpha = la;
  mesh.k3 = k3;
  mesh.k4 = k4;
  mesh.h = profile.h;
  mesh.vertices.resize(std::size_t(ns) * std::size_t(ntheta));
  mesh.residual.resize(mesh.vertices.size());
  mesh.min_immersion = std::numeric_limits<double>::infinity();

  struct prof_pt { double x, y, z, xp, yp, zp; };
  std::vector<prof_pt> pp(std::size_t(ntheta) + 1);
  for (int j = 0; j <= ntheta; ++j) {
    double th = la * double(j) / double(ntheta);
    auto av = profile.alpha(th, 1);
    pp[std::size_t(j)] = {av[0].value(),    av[1].value(),    av[2].value(),
                          av[0].deriv(1), av[1].deriv(1), av[2].deriv(1)};
    double qres = std::fabs(pp[std::size_t(j)].x * pp[std::size_t(j)].x +
                            k3 * pp[std::size_t(j)].y * pp[std::size_t(j)].y -
                            pp[std::size_t(j)].z * pp[std::size_t(j)].z - profile.h);
    mesh.max_quadric_residual = std::max(mesh.max_quadric_residual, qres);
    double sp = std::sqrt(pp[std::size_t(j)].xp * pp[std::size_t(j)].xp +
                          pp[std::size_t(j)].yp * pp[std::size_t(j)].yp +
                          pp[std::size_t(j)].zp * pp[std::size_t(j)].zp);
    mesh.max_speed_defect = std::max(mesh.max_speed_defect, std::fabs(sp - 1.0));
    if (!(std::fabs(pp[std::size_t(j)].z) > 0))
      throw empty_branch("profile touches z = 0");
  }

  mesh.s.resize(std::size_t(ns));
  mesh.theta.resize(std::size_t(ntheta));
  for (int j = 0; j < ntheta; ++j) mesh.theta[std::size_t(j)] = la * double(j) / double(ntheta);

  auto frame_at = [&](double s) {
    return frame_minimal(jet(g, s, 4));
  };
  auto place = [&](const moving_frame& f, const prof_pt& q) -> vec4 {
    return f.p + q.x * f.basis(1) + ((rk * q.z - 1.0) / kk) * f.basis(2) +
           q.y * f.basis(3);
  };
  auto tangents = [&](const moving_frame& f, const prof_pt& q, vec4& us,
                      vec4& ut) {
    us = rk * q.z * f.basis(0) + (-k3 * q.y) * f.basis(1) + (-q.y) * f.basis(2) +
         q.x * f.basis(3);
    ut = q.xp * f.basis(1) + (q.zp / rk) * f.basis(2) + q.yp * f.basis(3);
  };

  for (int i = 0; i < ns; ++i) {
    double s = lg * double(i) / double(ns);
    mesh.s[std::size_t(i)] = s;
    moving_frame f = frame_at(s);
    for (int j = 0; j < ntheta; ++j) {
      const prof_pt& q = pp[std::size_t(j)];
      vec4 v = place(f, q);
      vec4 us, ut;
      tangents(f, q, us, ut);
      double res = lambda(us, ut);
      std::size_t idx = std::size_t(i) * std::size_t(ntheta) + std::size_t(j);
      mesh.vertices[idx] = v;
      mesh.residual[idx] = res;
      mesh.max_residual = std::max(mesh.max_residual, std::fabs(res));
      double g11 = dot(us, us), g22 = dot(ut, ut), g12 = dot(us, ut);
      double tr = g11 + g22;
      double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * (g11 * g22 - g12 * g12)));
      mesh.min_immersion =
          std::min(mesh.min_immersion, std::sqrt(std::max(0.0, 0.5 * (tr - disc))));
    }
  }
  // periodicity defects, measured off-grid at the wrap
  {
    moving_frame f0 = frame_at(0.0), f1 = frame_at(lg);
    for (int j = 0; j < ntheta; ++j) {
      vec4 d = place(f1, pp[std::size_t(j)]) - place(f0, pp[std::size_t(j)]);
      mesh.defect_s = std::max(mesh.defect_s, norm(d));
    }
    auto awrap = profile.alpha(la, 1);
    prof_pt qw{awrap[0].value(),  awrap[1].value(),  awrap[2].value(),
               awrap[0].deriv(1), awrap[1].deriv(1), awrap[2].deriv(1)};
    for (int i = 0; i < ns; i += std::max(1, ns / 16)) {
      moving_frame f = frame_at(mesh.s[std::size_t(i)]);
      vec4 d = place(f, qw) - place(f, pp[0]);
      mesh.defect_theta = std::max(mesh.defect_theta, norm(d));
    }
  }
  return mesh;
}

}  // namespace sympcurve
