#pragma once

// Constant-curvature Lagrangian curves: the taxonomy by the roots of
// pi(l) = l^4 + k3 l^2 + (k3^2 - k4), closed-form generators for every case,
// closed-curve / torus-knot detection, and symplectic length.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "sympcurve/curve.hpp"
#include "sympcurve/group.hpp"
#include "sympcurve/quadrature.hpp"

namespace sympcurve {

enum class case_tag { I1, I2a, I2b, I2c, II1, II2, III1, III2, IV };

inline const char* to_string(case_tag t) {
  switch (t) {
    case case_tag::I1: return "I.1";
    case case_tag::I2a: return "I.2.a";
    case case_tag::I2b: return "I.2.b";
    case case_tag::I2c: return "I.2.c";
    case case_tag::II1: return "II.1";
    case case_tag::II2: return "II.2";
    case case_tag::III1: return "III.1";
    case case_tag::III2: return "III.2";
    case case_tag::IV: return "IV";
  }
  return "?";
}

inline case_tag parse_case_tag(const std::string& s) {
  for (case_tag t : {case_tag::I1, case_tag::I2a, case_tag::I2b, case_tag::I2c,
                     case_tag::II1, case_tag::II2, case_tag::III1,
                     case_tag::III2, case_tag::IV})
    if (s == to_string(t)) return t;
  throw invalid_parameters("unknown case tag '" + s + "'");
}

struct class_case {
  case_tag tag = case_tag::IV;
  double mu = 0, nu = 0;
};

// (k3, k4) of a case.
inline std::pair<double, double> case_curvatures(const class_case& c) {
  double m2 = c.mu * c.mu, n2 = c.nu * c.nu;
  switch (c.tag) {
    case case_tag::I1: {
      double k3 = 2.0 * (n2 - m2);
      double sum = m2 + n2;
      return {k3, k3 * k3 - sum * sum};
    }
    case case_tag::I2a: return {-(m2 + n2), m2 * m2 + m2 * n2 + n2 * n2};
    case case_tag::I2b: return {m2 + n2, m2 * m2 + m2 * n2 + n2 * n2};
    case case_tag::I2c: return {m2 - n2, m2 * m2 - m2 * n2 + n2 * n2};
    case case_tag::II1: return {-m2, m2 * m2};
    case case_tag::II2: return {m2, m2 * m2};
    case case_tag::III1: return {2.0 * m2, 3.0 * m2 * m2};
    case case_tag::III2: return {-2.0 * m2, 3.0 * m2 * m2};
    case case_tag::IV: return {0.0, 0.0};
  }
  return {0, 0};
}

// Boundary sets are decided against 1e-12 * max(1, k3^2, |k4|); ties go to
// the more degenerate case.
inline class_case classify(double k3, double k4) {
  if (!std::isfinite(k3) || !std::isfinite(k4))
    throw nonfinite_input("classify: non-finite curvatures");
  double tol = 1e-12 * std::max({1.0, k3 * k3, std::fabs(k4)});
  double d1 = k3 * k3 - k4;       // = 0 on family II
  double d2 = 4.0 * k4 - 3.0 * k3 * k3;  // = 0 on family III
  if (std::fabs(k3) <= tol && std::fabs(k4) <= tol) return {case_tag::IV, 0, 0};
  if (std::fabs(d1) <= tol)
    return k3 > 0 ? class_case{case_tag::II2, std::sqrt(k3), 0}
                  : class_case{case_tag::II1, std::sqrt(-k3), 0};
  if (std::fabs(d2) <= tol)
    return k3 > 0 ? class_case{case_tag::III1, std::sqrt(0.5 * k3), 0}
                  : class_case{case_tag::III2, std::sqrt(-0.5 * k3), 0};
  if (d2 < 0) {
    // roots {+-mu +- i nu}
    double s = std::sqrt(d1);  // = mu^2 + nu^2 > 0 here
    double mu = std::sqrt(0.5 * (s - 0.5 * k3));
    double nu = std::sqrt(0.5 * (s + 0.5 * k3));
    return {case_tag::I1, mu, nu};
  }
  double sq = std::sqrt(d2);
  if (k3 < -sq) {
    double mu = std::sqrt(0.5 * (-k3 + sq));
    double nu = std::sqrt(0.5 * (-k3 - sq));
    return {case_tag::I2a, mu, nu};
  }
  if (k3 > sq) {
    double mu = std::sqrt(0.5 * (k3 + sq));
    double nu = std::sqrt(0.5 * (k3 - sq));
    return {case_tag::I2b, mu, nu};
  }
  double mu = std::sqrt(0.5 * (k3 + sq));
  double nu = std::sqrt(0.5 * (-k3 + sq));
  return {case_tag::I2c, mu, nu};
}

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw invalid_parameters(what);
}

}  // namespace detail

// Closed-form representative with curvatures (0, 1, k3, k4) of the case.
// II.1 uses sinh in the 4th component and III.1/III.2 use the exp(sA)
// representative; the printed forms fail the curvature check (see tests).
inline curve generate(const class_case& c) {
  double mu = c.mu, nu = c.nu;
  switch (c.tag) {
    case case_tag::IV:
      return curve::closed_form([](double t, int n) -> vec4t {
        taylor s = taylor::variable(t, n);
        return {s / std::sqrt(24.0), (s * s) / std::sqrt(12.0),
                -(pow(s, 4)) / std::sqrt(24.0), pow(s, 3) / std::sqrt(12.0)};
      });
    case case_tag::I2a: {
      detail::require(mu > nu && nu > 0, "case I.2.a needs mu > nu > 0");
      double c0 = 1.0 / std::sqrt(mu * mu - nu * nu);
      double an = c0 / std::pow(nu, 1.5), am = c0 / std::pow(mu, 1.5);
      return curve::closed_form([=](double t, int n) -> vec4t {
        taylor s = taylor::variable(t, n);
        return {an * sinh(nu * s), am * cosh(mu * s), an * cosh(nu * s),
                am * sinh(mu * s)};
      });
    }
    case case_tag::I2b: {
      detail::require(mu > nu && nu > 0, "case I.2.b needs mu > nu > 0");
      double c0 = 1.0 / std::sqrt(mu * mu - nu * nu);
      double an = c0 / std::pow(nu, 1.5), am = c0 / std::pow(mu, 1.5);
      return curve::closed_form([=](double t, int n) -> vec4t {
        taylor s = taylor::variable(t, n);
        return {an * sin(nu * s), am * cos(mu * s), an * cos(nu * s),
                am * sin(mu * s)};
      });
    }
    case case_tag::I2c: {
      detail::require(mu > 0 && nu > 0, "case I.2.c needs mu, nu > 0");
      double c0 = 1.0 / std::sqrt(mu * mu + nu * nu);
      double an = c0 / std::pow(nu, 1.5), am = c0 / std::pow(mu, 1.5);
      return curve::closed_form([=](double t, int n) -> vec4t {
        taylor s = taylor::variable(t, n);
        return {-an * sinh(nu * s), am * cos(mu * s), an * cosh(nu * s),
                am * sin(mu * s)};
      });
    }
    case case_tag::I1: {
      detail::require(mu > 0 && nu > 0, "case I.1 needs mu, nu > 0");
      double m2 = mu * mu, n2 = nu * nu, den = m2 + n2;
      detail::require(std::fabs(m2 - 3.0 * n2) > 1e-8 * den &&
                          std::fabs(n2 - 3.0 * m2) > 1e-8 * den,
                      "case I.1 parametrization degenerates at mu^2 = 3 nu^2 "
                      "or nu^2 = 3 mu^2 (k4 = 0)");
      double a1 = (m2 - 3.0 * n2) * mu / den;
      double b = -0.5 / (den * den * mu * nu);
      double a2 = 0.5 * (m2 - 3.0 * n2) / ((n2 - 3.0 * m2) * den * den * n2);
      double a3 = 0.5 * (3.0 * m2 - n2) / ((m2 - 3.0 * n2) * den * den * m2);
      double a4 = (n2 - 3.0 * m2) * nu / den;
      return curve::closed_form([=](double t, int n) -> vec4t {
        taylor s = taylor::variable(t, n);
        taylor cn = cos(nu * s), sn = sin(nu * s);
        taylor ch = cosh(mu * s), sh = sinh(mu * s);
        return {a1 * cn * sh, b * sn * sh + a2 * cn * ch,
                b * sn * sh + a3 * cn * ch, a4 * sn * ch};
      });
    }
    case case_tag::II1: {
      detail::require(mu > 0, "case II.1 needs mu > 0");
      double a = 1.0 / std::pow(mu, 2.5);
      return curve::closed_form([=](double t, int n) -> vec4t {
        taylor s = taylor::variable(t, n);
        return {s, a * cosh(mu * s), (s * s) / (2.0 * mu * mu), a * sinh(mu * s)};
      });
    }
    case case_tag::II2: {
      detail::require(mu > 0, "case II.2 needs mu > 0");
      double a = 1.0 / std::pow(mu, 2.5);
      return curve::closed_form([=](double t, int n) -> vec4t {
        taylor s = taylor::variable(t, n);
        return {s, a * cos(mu * s), -(s * s) / (2.0 * mu * mu), a * sin(mu * s)};
      });
    }
    case case_tag::III1: {
      detail::require(mu > 0, "case III.1 needs mu > 0");
      double m2 = mu * mu, m3 = m2 * mu, m4 = m2 * m2;
      return curve::closed_form([=](double t, int n) -> vec4t {
        taylor s = taylor::variable(t, n);
        taylor cs = cos(mu * s), sn = sin(mu * s);
        return {1.5 / mu * sn - 0.5 * s * cs, 0.5 / mu * s * sn,
                (cs - 1.0) / m4 + 0.5 / m3 * s * sn,
                0.5 / m3 * sn - 0.5 / m2 * s * cs};
      });
    }
    case case_tag::III2: {
      detail::require(mu > 0, "case III.2 needs mu > 0");
      double m2 = mu * mu, m3 = m2 * mu, m4 = m2 * m2;
      return curve::closed_form([=](double t, int n) -> vec4t {
        taylor s = taylor::variable(t, n);
        taylor ch = cosh(mu * s), sh = sinh(mu * s);
        return {1.5 / mu * sh - 0.5 * s * ch, 0.5 / mu * s * sh,
                (ch - 1.0) / m4 - 0.5 / m3 * s * sh,
                -0.5 / m3 * sh + 0.5 / m2 * s * ch};
      });
    }
  }
  throw invalid_parameters("unknown case");
}

// ---------------------------------------------------------------------------
// closedness

struct torus_knot_info {
  long m = 0, n = 0;       // coprime, mu/nu = m/n
  double length = 0;       // symplectic length of one period (quadrature)
  double period = 0;       // fundamental period from the brute-force oracle
  double ratio_error = 0;  // |mu/nu - m/n|, the rational-detection confidence
};

namespace detail {

// Best rational p/q with q <= qmax approximating x, by continued fractions.
inline std::pair<long, long> rational_approx(double x, long qmax) {
  long p0 = 1, q0 = 0, p1 = long(std::floor(x)), q1 = 1;
  double frac = x - std::floor(x);
  while (q1 <= qmax) {
    if (frac < 1e-15) break;
    frac = 1.0 / frac;
    long a = long(std::floor(frac));
    frac -= std::floor(frac);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > qmax) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
  }
  return {p1, q1};
}

// Smallest T > 0 with max_s |g(s+T) - g(s)| below tol, scanned over the
// multiples of the slow frequency and refined by golden-section search. The
// refinement window stays below half a fast-frequency period so the search
// is unimodal around each candidate.
inline std::optional<double> fundamental_period(const curve& g, double base,
                                                long kmax, double abs_tol,
                                                double fast_freq) {
  std::vector<double> ss;
  for (int i = 0; i < 23; ++i) ss.push_back(base * (double(i) + 0.13) / 23.0);
  auto defect = [&](double T) {
    double d = 0;
    for (double s : ss) d = std::max(d, norm(g.at(s + T) - g.at(s)));
    return d;
  };
  double w = std::min(0.2 * base, 0.3 * 2.0 * std::numbers::pi / fast_freq);
  for (long k = 1; k <= kmax; ++k) {
    double T = base * double(k);
    // golden-section minimize defect over [T-w, T+w]
    double lo = T - w, hi = T + w;
    const double gr = 0.6180339887498949;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = defect(x1), f2 = defect(x2);
    for (int it = 0; it < 70; ++it) {
      if (f1 < f2) {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = defect(x1);
      } else {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = defect(x2);
      }
    }
    double T_best = 0.5 * (lo + hi);
    if (defect(T_best) <= abs_tol) return T_best;
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<torus_knot_info> closedness(double k3, double k4,
                                                 double tol = 1e-9,
                                                 long den_bound = 64) {
  if (!(tol > 0)) throw invalid_parameters("closedness: tol must be > 0");
  double guard = 1e-12 * std::max({1.0, k3 * k3, std::fabs(k4)});
  // closed trajectories need k3 > 0 and k3^2 > k4 > (3/4) k3^2, strictly
  if (!(k3 > guard)) return std::nullopt;
  if (!(k3 * k3 - k4 > guard)) return std::nullopt;
  if (!(k4 - 0.75 * k3 * k3 > guard)) return std::nullopt;
  double sq = std::sqrt(4.0 * k4 - 3.0 * k3 * k3);
  double mu = std::sqrt(0.5 * (k3 + sq));
  double nu = std::sqrt(0.5 * (k3 - sq));
  double ratio = mu / nu;
  auto [p, q] = detail::rational_approx(ratio, den_bound);
  double err = std::fabs(ratio - double(p) / double(q));
  if (!(err <= tol) || p <= 0) return std::nullopt;
  torus_knot_info info;
  info.m = p;
  info.n = q;
  info.ratio_error = err;
  curve g = generate({case_tag::I2b, mu, nu});
  double base = 2.0 * std::numbers::pi / nu;  // slow-phase period
  double amp = 0;
  for (int i = 0; i < 16; ++i) amp = std::max(amp, norm(g.at(base * i / 16.0)));
  auto period =
      detail::fundamental_period(g, base, q + 1, 1e-9 * std::max(1.0, amp), mu);
  if (!period) return std::nullopt;
  info.period = *period;
  info.length = symplectic_length(g, 0.0, *period);
  return info;
}

// One-parameter subgroup generator of case I.2.b and its base point:
// X = nu (B11 - C11) + mu (C22 - B22), p = (0, (mu^3(mu^2-nu^2))^{-1/2},
// (nu^3(mu^2-nu^2))^{-1/2}, 0).
inline std::pair<algebra_element, vec4> one_parameter_generator(
    const class_case& c) {
  if (c.tag != case_tag::I2b)
    throw unsupported_case("one_parameter_generator: only case I.2.b is wired up");
  detail::require(c.mu > c.nu && c.nu > 0, "case I.2.b needs mu > nu > 0");
  algebra_element x;
  x[basis_index::B11] = c.nu;
  x[basis_index::C11] = -c.nu;
  x[basis_index::C22] = c.mu;
  x[basis_index::B22] = -c.mu;
  double d = c.mu * c.mu - c.nu * c.nu;
  vec4 p{0.0, 1.0 / std::sqrt(c.mu * c.mu * c.mu * d),
         1.0 / std::sqrt(c.nu * c.nu * c.nu * d), 0.0};
  return {x, p};
}

}  // namespace sympcurve
