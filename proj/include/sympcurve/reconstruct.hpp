#pragma once

// Integration of the Serret-Frenet system d(rho~)/ds = rho~ K(kappa(s)) on
// S(4,R), producing the unique-up-to-congruence curve with prescribed
// curvatures, plus congruence alignment of two curves.

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "sympcurve/curve.hpp"
#include "sympcurve/frames.hpp"
#include "sympcurve/group.hpp"
#include "sympcurve/jet.hpp"

namespace sympcurve {

using scalar_fn = std::function<taylor(double, int)>;

inline scalar_fn constant_fn(double v) {
  return [v](double, int order) { return taylor::constant(v, order); };
}

struct curvature_profile {
  scalar_fn k2, k3, k4;
  scalar_fn k1;  // empty: k1 == 0 (Lagrangian pipeline)

  bool lagrangian() const { return !k1; }

  static curvature_profile constants(double k2v, double k3v, double k4v) {
    return {constant_fn(k2v), constant_fn(k3v), constant_fn(k4v), nullptr};
  }
};

// Curvatures-with-derivatives of a profile at s (for the K matrices).
inline invariant_derivs profile_derivs(const curvature_profile& p, double s) {
  invariant_derivs d;
  taylor t2 = p.k2(s, 2), t3 = p.k3(s, 1), t4 = p.k4(s, 0);
  d.k2 = t2.deriv(0);
  d.k2p = t2.deriv(1);
  d.k2pp = t2.deriv(2);
  d.k3 = t3.deriv(0);
  d.k3p = t3.deriv(1);
  d.k4 = t4.deriv(0);
  if (p.k1) {
    taylor t1 = p.k1(s, 3);
    d.k1 = t1.deriv(0);
    d.k1p = t1.deriv(1);
    d.k1pp = t1.deriv(2);
    d.k1ppp = t1.deriv(3);
  }
  d.phi = d.k2 * d.k2 - d.k1 * d.k3 + d.k1p * d.k2p - d.k2 * d.k1pp;
  d.phip = 2.0 * d.k2 * d.k2p - d.k1p * d.k3 - d.k1 * d.k3p + d.k1p * d.k2pp -
           d.k2 * d.k1ppp;
  return d;
}

enum class stepper { midpoint2, magnus4 };

struct reconstruction_result {
  std::vector<double> s;
  std::vector<group_element> frames;
  std::vector<vec4> gamma;
  double sympl_drift = 0;  // max over the path of |E^T J E - J|_max

  curve as_sampled_curve() const {
    return curve::from_samples(s.front(), s[1] - s[0], gamma);
  }
};

namespace detail {

inline mat5 profile_K(const curvature_profile& p, cross_section sect, double s) {
  invariant_derivs d = profile_derivs(p, s);
  if (!(std::fabs(d.k2) > 1e-12))
    throw profile_singularity("k2(s) vanishes at s = " + std::to_string(s));
  if (sect == cross_section::generic && !(std::fabs(d.k1) > 1e-12))
    throw profile_singularity("k1(s) vanishes at s = " + std::to_string(s));
  return serret_matrix(sect, d).K;
}

}  // namespace detail

inline reconstruction_result integrate(const curvature_profile& profile,
                                       double s0, double s1, double h,
                                       const moving_frame& init,
                                       stepper method = stepper::midpoint2) {
  if (!(h > 0)) throw invalid_parameters("integrate: step h must be > 0");
  if (!(s1 > s0)) throw invalid_parameters("integrate: need s1 > s0");
  cross_section sect = profile.lagrangian() ? cross_section::minimal_lagrangian
                                            : cross_section::generic;
  long n = std::lround((s1 - s0) / h);
  if (n < 1) n = 1;
  double he = (s1 - s0) / double(n);

  // Frenet system K(s); a k2 sign change on a node interval is a pole of the
  // section, not an integrable feature.
  {
    double prev = profile_derivs(profile, s0).k2;
    for (long i = 1; i <= n; ++i) {
      double cur = profile_derivs(profile, s0 + he * double(i)).k2;
      if (prev * cur <= 0)
        throw profile_singularity("k2 crosses zero inside the integration window");
      prev = cur;
    }
  }

  const double sqrt3 = std::sqrt(3.0);
  reconstruction_result out;
  out.s.reserve(std::size_t(n) + 1);
  out.frames.reserve(std::size_t(n) + 1);
  out.gamma.reserve(std::size_t(n) + 1);

  mat5 rho = init.as_group_element().as_mat5();
  auto push = [&](double s, const mat5& m) {
    group_element g = group_element::from_mat5(m, 1e-6);
    out.s.push_back(s);
    out.gamma.push_back(g.a);
    out.sympl_drift = std::max(out.sympl_drift, symplectic_defect(g.A));
    out.frames.push_back(std::move(g));
  };
  push(s0, rho);
  for (long i = 0; i < n; ++i) {
    double s = s0 + he * double(i);
    mat5 step;
    if (method == stepper::midpoint2) {
      step = expm5(detail::profile_K(profile, sect, s + 0.5 * he), he);
    } else {
      double c1 = 0.5 - sqrt3 / 6.0, c2 = 0.5 + sqrt3 / 6.0;
      mat5 a1 = detail::profile_K(profile, sect, s + c1 * he);
      mat5 a2 = detail::profile_K(profile, sect, s + c2 * he);
      mat5 omega = (0.5 * he) * (a1 + a2) +
                   (sqrt3 / 12.0 * he * he) * bracket(a1, a2);
      step = expm5(omega);
    }
    rho = rho * step;
    push(s0 + he * double(i + 1), rho);
  }
  return out;
}

// Step-doubling adaptive wrapper around the one-step maps; rejects steps whose
// local defect exceeds tol and raises StepRejected at h_min.
inline reconstruction_result integrate_adaptive(const curvature_profile& profile,
                                                double s0, double s1,
                                                const moving_frame& init,
                                                double tol = 1e-10,
                                                double h0 = 1e-2,
                                                double h_min = 1e-7) {
  cross_section sect = profile.lagrangian() ? cross_section::minimal_lagrangian
                                            : cross_section::generic;
  reconstruction_result out;
  mat5 rho = init.as_group_element().as_mat5();
  auto push = [&](double s, const mat5& m) {
    group_element g = group_element::from_mat5(m, 1e-6);
    out.s.push_back(s);
    out.gamma.push_back(g.a);
    out.sympl_drift = std::max(out.sympl_drift, symplectic_defect(g.A));
    out.frames.push_back(std::move(g));
  };
  auto one = [&](const mat5& r, double s, double h) {
    return r * expm5(detail::profile_K(profile, sect, s + 0.5 * h), h);
  };
  push(s0, rho);
  double s = s0, h = h0;
  while (s < s1 - 1e-14 * std::fabs(s1)) {
    h = std::min(h, s1 - s);
    mat5 full = one(rho, s, h);
    mat5 half = one(one(rho, s, 0.5 * h), s + 0.5 * h, 0.5 * h);
    double err = norm_max(full - half);
    if (err <= tol || h <= h_min) {
      if (err > tol)
        throw step_rejected("local error " + std::to_string(err) +
                            " above tol at h_min");
      rho = half;
      s += h;
      push(s, rho);
      if (err < 0.1 * tol) h *= 2.0;
    } else {
      h *= 0.5;
      if (h < h_min) h = h_min;
    }
  }
  return out;
}

struct alignment {
  group_element g;       // g * curve1 ~= curve2
  double residual = 0;   // max_i |g * g1(s_i) - g2(s_i)|
};

inline alignment congruence_align(const curve& c1, const curve& c2) {
  const auto& s1 = c1.samples();
  const auto& s2 = c2.samples();
  if (s1.points.size() != s2.points.size() ||
      std::fabs(s1.h - s2.h) > 1e-12 * s1.h || std::fabs(s1.t0 - s2.t0) > 1e-12)
    throw invalid_parameters("congruence_align: curves must share one grid");
  int n = int(s1.points.size());
  int anchor = n / 2;  // mid-grid: room for wide, low-noise stencils
  double t = s1.t0 + s1.h * anchor;
  auto frame_of = [&](const curve& c) {
    curve_jet j = jet(c, t, 4);
    mat4 m;
    for (int k = 0; k < 4; ++k) m.set_col(k, j[k + 1]);
    double scale = detail::jet_scale(j);
    if (!(std::fabs(det(m)) > 1e-10 * std::max(1.0, scale * scale)))
      throw not_full("congruence_align: curve is not linearly full at the anchor");
    try {
      return frame_minimal(j);
    } catch (const section_not_transverse&) {
      return frame_generic(j);
    }
  };
  moving_frame f1 = frame_of(c1), f2 = frame_of(c2);
  alignment out;
  out.g = compose(f2.as_group_element(1e-5), inverse(f1.as_group_element(1e-5)));
  auto residual_of = [&](const group_element& g) {
    double r = 0;
    for (int i = 0; i < n; ++i) {
      vec4 d = act(g, s1.points[std::size_t(i)]) - s2.points[std::size_t(i)];
      r = std::max(r, norm(d));
    }
    return r;
  };
  out.residual = residual_of(out.g);
  // refine by the unconstrained affine least-squares fit; the sample values
  // are exact, so on genuinely congruent pairs this reaches roundoff and the
  // fitted linear part is symplectic on its own
  {
    mat<5> gram{};
    std::array<std::array<double, 5>, 4> rhs{};
    for (int i = 0; i < n; ++i) {
      std::array<double, 5> row{s1.points[std::size_t(i)][0], s1.points[std::size_t(i)][1],
                                s1.points[std::size_t(i)][2], s1.points[std::size_t(i)][3], 1.0};
      for (int r = 0; r < 5; ++r)
        for (int cc = 0; cc < 5; ++cc)
          gram(r, cc) += row[std::size_t(r)] * row[std::size_t(cc)];
      for (int out_c = 0; out_c < 4; ++out_c)
        for (int r = 0; r < 5; ++r)
          rhs[std::size_t(out_c)][std::size_t(r)] +=
              row[std::size_t(r)] * s2.points[std::size_t(i)][std::size_t(out_c)];
    }
    try {
      mat<5> gi = inverse(gram);
      group_element fit;
      for (int out_c = 0; out_c < 4; ++out_c) {
        std::array<double, 5> sol{};
        for (int r = 0; r < 5; ++r)
          for (int cc = 0; cc < 5; ++cc)
            sol[std::size_t(r)] += gi(r, cc) * rhs[std::size_t(out_c)][std::size_t(cc)];
        for (int cc = 0; cc < 4; ++cc) fit.A(out_c, cc) = sol[std::size_t(cc)];
        fit.a[std::size_t(out_c)] = sol[4];
      }
      if (symplectic_defect_rel(fit.A) < 1e-6) {
        double r_fit = residual_of(fit);
        if (r_fit < out.residual) {
          out.g = fit;
          out.residual = r_fit;
        }
      }
    } catch (const error&) {
      // singular normal equations (degenerate span): keep the frame estimate
    }
  }
  return out;
}

}  // namespace sympcurve
