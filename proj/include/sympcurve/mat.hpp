#pragma once

// Small fixed-size dense linear algebra for R^4 and the 5x5 homogeneous
// representation of the affine group. Row-major storage.

#include <array>
#include <cmath>
#include <cstddef>

#include "sympcurve/errors.hpp"

namespace sympcurve {

using vec4 = std::array<double, 4>;

inline vec4 operator+(const vec4& a, const vec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
inline vec4 operator-(const vec4& a, const vec4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
inline vec4 operator*(double s, const vec4& a) {
  return {s * a[0], s * a[1], s * a[2], s * a[3]};
}
inline vec4 operator-(const vec4& a) { return {-a[0], -a[1], -a[2], -a[3]}; }

inline double dot(const vec4& a, const vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
inline double norm(const vec4& a) { return std::sqrt(dot(a, a)); }
inline double norm_inf(const vec4& a) {
  double m = 0;
  for (double x : a) m = std::max(m, std::fabs(x));
  return m;
}
inline bool finite(const vec4& a) {
  for (double x : a)
    if (!std::isfinite(x)) return false;
  return true;
}

template <int N>
struct mat {
  std::array<double, N * N> e{};

  double& operator()(int i, int j) { return e[std::size_t(i * N + j)]; }
  double operator()(int i, int j) const { return e[std::size_t(i * N + j)]; }

  static mat identity() {
    mat m;
    for (int i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }
  static mat zero() { return mat{}; }

  mat transpose() const {
    mat m;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) m(i, j) = (*this)(j, i);
    return m;
  }

  std::array<double, N> col(int j) const {
    std::array<double, N> c;
    for (int i = 0; i < N; ++i) c[std::size_t(i)] = (*this)(i, j);
    return c;
  }
  void set_col(int j, const std::array<double, N>& c) {
    for (int i = 0; i < N; ++i) (*this)(i, j) = c[std::size_t(i)];
  }
};

using mat4 = mat<4>;
using mat5 = mat<5>;

template <int N>
mat<N> operator+(const mat<N>& a, const mat<N>& b) {
  mat<N> c;
  for (std::size_t k = 0; k < a.e.size(); ++k) c.e[k] = a.e[k] + b.e[k];
  return c;
}
template <int N>
mat<N> operator-(const mat<N>& a, const mat<N>& b) {
  mat<N> c;
  for (std::size_t k = 0; k < a.e.size(); ++k) c.e[k] = a.e[k] - b.e[k];
  return c;
}
template <int N>
mat<N> operator*(double s, const mat<N>& a) {
  mat<N> c;
  for (std::size_t k = 0; k < a.e.size(); ++k) c.e[k] = s * a.e[k];
  return c;
}
template <int N>
mat<N> operator*(const mat<N>& a, const mat<N>& b) {
  mat<N> c;
  for (int i = 0; i < N; ++i)
    for (int k = 0; k < N; ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < N; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline vec4 operator*(const mat4& m, const vec4& v) {
  vec4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[std::size_t(i)] += m(i, j) * v[std::size_t(j)];
  return r;
}

template <int N>
double norm_max(const mat<N>& a) {
  double m = 0;
  for (double x : a.e) m = std::max(m, std::fabs(x));
  return m;
}

// 1-norm (max column sum); used for exponential scaling.
template <int N>
double norm_1(const mat<N>& a) {
  double m = 0;
  for (int j = 0; j < N; ++j) {
    double s = 0;
    for (int i = 0; i < N; ++i) s += std::fabs(a(i, j));
    m = std::max(m, s);
  }
  return m;
}

// Gaussian elimination with partial pivoting.
template <int N>
mat<N> inverse(const mat<N>& a) {
  mat<N> lhs = a;
  mat<N> rhs = mat<N>::identity();
  for (int c = 0; c < N; ++c) {
    int p = c;
    for (int r = c + 1; r < N; ++r)
      if (std::fabs(lhs(r, c)) > std::fabs(lhs(p, c))) p = r;
    if (lhs(p, c) == 0.0) throw error("singular matrix in inverse()");
    if (p != c)
      for (int j = 0; j < N; ++j) {
        std::swap(lhs(p, j), lhs(c, j));
        std::swap(rhs(p, j), rhs(c, j));
      }
    double inv = 1.0 / lhs(c, c);
    for (int j = 0; j < N; ++j) {
      lhs(c, j) *= inv;
      rhs(c, j) *= inv;
    }
    for (int r = 0; r < N; ++r) {
      if (r == c) continue;
      double f = lhs(r, c);
      if (f == 0.0) continue;
      for (int j = 0; j < N; ++j) {
        lhs(r, j) -= f * lhs(c, j);
        rhs(r, j) -= f * rhs(c, j);
      }
    }
  }
  return rhs;
}

template <int N>
double det(const mat<N>& a) {
  mat<N> m = a;
  double d = 1.0;
  for (int c = 0; c < N; ++c) {
    int p = c;
    for (int r = c + 1; r < N; ++r)
      if (std::fabs(m(r, c)) > std::fabs(m(p, c))) p = r;
    if (m(p, c) == 0.0) return 0.0;
    if (p != c) {
      for (int j = c; j < N; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (int r = c + 1; r < N; ++r) {
      double f = m(r, c) / m(c, c);
      for (int j = c; j < N; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return d;
}

}  // namespace sympcurve
