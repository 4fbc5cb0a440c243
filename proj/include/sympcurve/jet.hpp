#pragma once

// Truncated Taylor series in one variable (value + higher coefficients),
// the jet arithmetic used to evaluate high-order derivatives of closed-form
// curves exactly to roundoff. Coefficients are Taylor coefficients;
// deriv(k) = k! * coeff(k).

#include <cmath>
#include <vector>

#include "sympcurve/errors.hpp"

namespace sympcurve {

class taylor {
 public:
  taylor() : c_(1, 0.0) {}
  explicit taylor(int order) : c_(std::size_t(order) + 1, 0.0) {}

  static taylor constant(double v, int order) {
    taylor t(order);
    t.c_[0] = v;
    return t;
  }
  // the identity function centered at v: t -> v + (t - v)
  static taylor variable(double v, int order) {
    taylor t(order);
    t.c_[0] = v;
    if (order >= 1) t.c_[1] = 1.0;
    return t;
  }

  int order() const { return int(c_.size()) - 1; }
  double coeff(int k) const { return k <= order() ? c_[std::size_t(k)] : 0.0; }
  double& coeff_ref(int k) { return c_[std::size_t(k)]; }
  double value() const { return c_[0]; }
  double deriv(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f * coeff(k);
  }

  // Taylor expansion of the i-th derivative (order drops by i).
  taylor shift_derivative(int i) const {
    if (i > order()) return taylor(0);
    taylor r(order() - i);
    for (int k = 0; k + i <= order(); ++k) {
      double f = 1.0;
      for (int j = k + 1; j <= k + i; ++j) f *= j;
      r.c_[std::size_t(k)] = f * c_[std::size_t(k + i)];
    }
    return r;
  }

  taylor truncate(int order) const {
    taylor r(order);
    for (int k = 0; k <= order && k <= this->order(); ++k)
      r.c_[std::size_t(k)] = c_[std::size_t(k)];
    return r;
  }

  friend taylor operator+(const taylor& a, const taylor& b) {
    taylor r(std::max(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) r.c_[std::size_t(k)] = a.coeff(k) + b.coeff(k);
    return r;
  }
  friend taylor operator-(const taylor& a, const taylor& b) {
    taylor r(std::max(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) r.c_[std::size_t(k)] = a.coeff(k) - b.coeff(k);
    return r;
  }
  friend taylor operator-(const taylor& a) {
    taylor r(a.order());
    for (int k = 0; k <= a.order(); ++k) r.c_[std::size_t(k)] = -a.coeff(k);
    return r;
  }
  friend taylor operator*(const taylor& a, const taylor& b) {
    taylor r(std::max(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) {
      double s = 0;
      int jmax = std::min(k, a.order());
      for (int j = std::max(0, k - b.order()); j <= jmax; ++j)
        s += a.coeff(j) * b.coeff(k - j);
      r.c_[std::size_t(k)] = s;
    }
    return r;
  }
  friend taylor operator/(const taylor& a, const taylor& b) {
    if (b.coeff(0) == 0.0) throw error("taylor division by series with zero value");
    taylor r(std::max(a.order(), b.order()));
    for (int k = 0; k <= r.order(); ++k) {
      double s = a.coeff(k);
      for (int j = 1; j <= k; ++j) s -= b.coeff(j) * r.coeff(k - j);
      r.c_[std::size_t(k)] = s / b.coeff(0);
    }
    return r;
  }

  friend taylor operator+(const taylor& a, double s) { return a + constant(s, a.order()); }
  friend taylor operator+(double s, const taylor& a) { return a + s; }
  friend taylor operator-(const taylor& a, double s) { return a - constant(s, a.order()); }
  friend taylor operator-(double s, const taylor& a) { return constant(s, a.order()) - a; }
  friend taylor operator*(const taylor& a, double s) {
    taylor r(a.order());
    for (int k = 0; k <= a.order(); ++k) r.c_[std::size_t(k)] = s * a.coeff(k);
    return r;
  }
  friend taylor operator*(double s, const taylor& a) { return a * s; }
  friend taylor operator/(const taylor& a, double s) { return a * (1.0 / s); }
  friend taylor operator/(double s, const taylor& a) { return constant(s, a.order()) / a; }

 private:
  std::vector<double> c_;
};

namespace detail {
// Pair recurrence for (sin, cos)-type function pairs under composition:
// s' = sgn_s * c * f', c' = sgn_c * s * f'.
inline void sincos_like(const taylor& f, double s0, double c0, double sgn_s,
                        double sgn_c, taylor& s, taylor& c) {
  int n = f.order();
  s = taylor(n);
  c = taylor(n);
  s.coeff_ref(0) = s0;
  c.coeff_ref(0) = c0;
  for (int k = 1; k <= n; ++k) {
    double as = 0, ac = 0;
    for (int j = 1; j <= k; ++j) {
      as += j * f.coeff(j) * c.coeff(k - j);
      ac += j * f.coeff(j) * s.coeff(k - j);
    }
    s.coeff_ref(k) = sgn_s * as / k;
    c.coeff_ref(k) = sgn_c * ac / k;
  }
}
}  // namespace detail

inline taylor sin(const taylor& f) {
  taylor s, c;
  detail::sincos_like(f, std::sin(f.value()), std::cos(f.value()), 1.0, -1.0, s, c);
  return s;
}
inline taylor cos(const taylor& f) {
  taylor s, c;
  detail::sincos_like(f, std::sin(f.value()), std::cos(f.value()), 1.0, -1.0, s, c);
  return c;
}
inline taylor sinh(const taylor& f) {
  taylor s, c;
  detail::sincos_like(f, std::sinh(f.value()), std::cosh(f.value()), 1.0, 1.0, s, c);
  return s;
}
inline taylor cosh(const taylor& f) {
  taylor s, c;
  detail::sincos_like(f, std::sinh(f.value()), std::cosh(f.value()), 1.0, 1.0, s, c);
  return c;
}

inline taylor exp(const taylor& f) {
  int n = f.order();
  taylor g(n);
  g.coeff_ref(0) = std::exp(f.value());
  for (int k = 1; k <= n; ++k) {
    double a = 0;
    for (int j = 1; j <= k; ++j) a += j * f.coeff(j) * g.coeff(k - j);
    g.coeff_ref(k) = a / k;
  }
  return g;
}

inline taylor log(const taylor& f) {
  if (f.value() <= 0.0) throw error("taylor log of non-positive value");
  int n = f.order();
  taylor g(n);
  g.coeff_ref(0) = std::log(f.value());
  for (int k = 1; k <= n; ++k) {
    double a = k * f.coeff(k);
    for (int j = 1; j < k; ++j) a -= j * g.coeff(j) * f.coeff(k - j);
    g.coeff_ref(k) = a / (k * f.value());
  }
  return g;
}

inline taylor pow(const taylor& f, double p) {
  int n = f.order();
  if (f.value() == 0.0) throw error("taylor pow at zero base");
  taylor g(n);
  g.coeff_ref(0) = std::pow(f.value(), p);
  for (int k = 1; k <= n; ++k) {
    double a = 0;
    for (int j = 1; j <= k; ++j)
      a += (p * j - (k - j)) * f.coeff(j) * g.coeff(k - j);
    g.coeff_ref(k) = a / (k * f.value());
  }
  return g;
}

inline taylor pow(const taylor& f, int p) {
  if (p < 0) return 1.0 / pow(f, -p);
  taylor r = taylor::constant(1.0, f.order());
  taylor base = f;
  int e = p;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

inline taylor sqrt(const taylor& f) { return pow(f, 0.5); }

}  // namespace sympcurve
