#pragma once

// The standard symplectic form on R^4, the groups Sp(4,R) and S(4,R) =
// R^4 x| Sp(4,R) in their 5x5 homogeneous representation, the 14-element
// basis of the Lie algebra s(4,R), and the matrix exponential.

#include <array>
#include <cmath>
#include <string>

#include "sympcurve/errors.hpp"
#include "sympcurve/mat.hpp"

namespace sympcurve {

constexpr double kSymplecticTol = 1e-10;

// J = (0 I2; -I2 0), the matrix of the standard symplectic form.
inline const mat4& J() {
  static const mat4 j = [] {
    mat4 m;
    m(0, 2) = 1;
    m(1, 3) = 1;
    m(2, 0) = -1;
    m(3, 1) = -1;
    return m;
  }();
  return j;
}

// Lambda(x, y) = x^T J y = -x3 y1 - x4 y2 + x1 y3 + x2 y4.
inline double lambda(const vec4& x, const vec4& y) {
  return -x[2] * y[0] - x[3] * y[1] + x[0] * y[2] + x[1] * y[3];
}

inline double symplectic_defect(const mat4& a) {
  return norm_max(a.transpose() * J() * a - J());
}

// Defect relative to |A|^2; the absolute defect of an honestly symplectic
// matrix grows like |A|^2 * eps, so membership checks on large elements
// (hyperbolic frames at large s) must scale.
inline double symplectic_defect_rel(const mat4& a) {
  double n = norm_max(a);
  return symplectic_defect(a) / std::max(1.0, n * n);
}

inline bool is_symplectic(const mat4& a, double tol = kSymplecticTol) {
  return symplectic_defect(a) <= tol;
}

// Defect of membership in sp(4,R): |a^T J + J a|_max.
inline double algebra_defect(const mat4& a) {
  return norm_max(a.transpose() * J() + J() * a);
}

// An affine symplectic transformation x -> A x + a.
struct group_element {
  vec4 a{};
  mat4 A = mat4::identity();

  group_element() = default;
  group_element(const vec4& transl, const mat4& lin, double tol = kSymplecticTol)
      : a(transl), A(lin) {
    if (!finite(a)) throw nonfinite_input("group element translation is not finite");
    double d = symplectic_defect_rel(A);
    if (!(d <= tol))
      throw error("linear part is not symplectic (relative defect " +
                  std::to_string(d) + ")");
  }

  static group_element identity() { return group_element{}; }

  mat5 as_mat5() const {
    mat5 m;
    m(0, 0) = 1;
    for (int i = 0; i < 4; ++i) {
      m(i + 1, 0) = a[std::size_t(i)];
      for (int j = 0; j < 4; ++j) m(i + 1, j + 1) = A(i, j);
    }
    return m;
  }
  static group_element from_mat5(const mat5& m, double tol = kSymplecticTol) {
    vec4 t{m(1, 0), m(2, 0), m(3, 0), m(4, 0)};
    mat4 lin;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) lin(i, j) = m(i + 1, j + 1);
    return group_element(t, lin, tol);
  }
};

inline vec4 act(const group_element& g, const vec4& x) { return g.A * x + g.a; }

inline group_element compose(const group_element& g, const group_element& h) {
  group_element r;
  r.A = g.A * h.A;
  r.a = g.A * h.a + g.a;
  return r;
}

inline group_element inverse(const group_element& g) {
  group_element r;
  r.A = inverse(g.A);
  r.a = -(r.A * g.a);
  return r;
}

// Basis of s(4,R): T1..T4, A11, A22, A12, A21, B11, B22, B12, C11, C22, C12.
// The order matches the co-basis listed with Eq. (MC1).
enum class basis_index {
  T1, T2, T3, T4,
  A11, A22, A12, A21,
  B11, B22, B12,
  C11, C22, C12,
};
constexpr int kAlgebraDim = 14;

inline const std::array<mat5, kAlgebraDim>& algebra_basis() {
  static const std::array<mat5, kAlgebraDim> basis = [] {
    std::array<mat5, kAlgebraDim> b{};
    auto lin = [](int i, int j) {  // E_ij in the 4x4 block, 0-indexed
      mat5 m;
      m(i + 1, j + 1) = 1;
      return m;
    };
    // translations
    for (int i = 0; i < 4; ++i) b[std::size_t(i)](i + 1, 0) = 1;
    // A^i_j = (E_ij, 0; 0, -E_ji) with i,j in {1,2}
    auto amat = [&](int i, int j) {
      mat5 m = lin(i, j);
      m(2 + j + 1, 2 + i + 1) = -1;
      return m;
    };
    b[4] = amat(0, 0);   // A11
    b[5] = amat(1, 1);   // A22
    b[6] = amat(0, 1);   // A12
    b[7] = amat(1, 0);   // A21
    // B^i_i = (0, E_ii; 0, 0); B12 = (0, E12+E21; 0, 0)
    b[8] = lin(0, 2);
    b[9] = lin(1, 3);
    b[10] = lin(0, 3) + lin(1, 2);
    // C^i_i = (0, 0; E_ii, 0); C12 = (0, 0; E12+E21, 0)
    b[11] = lin(2, 0);
    b[12] = lin(3, 1);
    b[13] = lin(2, 1) + lin(3, 0);
    return b;
  }();
  return basis;
}

// An element of s(4,R) by its coefficients on the 14-element basis.
struct algebra_element {
  std::array<double, kAlgebraDim> c{};

  double& operator[](basis_index i) { return c[std::size_t(i)]; }
  double operator[](basis_index i) const { return c[std::size_t(i)]; }

  mat5 as_mat5() const {
    mat5 m;
    const auto& basis = algebra_basis();
    for (int k = 0; k < kAlgebraDim; ++k) {
      if (c[std::size_t(k)] == 0.0) continue;
      m = m + c[std::size_t(k)] * basis[std::size_t(k)];
    }
    return m;
  }
};

inline mat5 bracket(const mat5& a, const mat5& b) { return a * b - b * a; }

// exp(t*m) by scaling and squaring; the series is truncated at 13 terms
// after scaling to 1-norm <= 0.5.
inline mat5 expm5(const mat5& m, double t = 1.0) {
  mat5 a = t * m;
  if (!std::isfinite(norm_max(a))) throw nonfinite_input("expm: non-finite entries");
  int squarings = 0;
  double nrm = norm_1(a);
  if (nrm > 0.5) {
    squarings = int(std::ceil(std::log2(nrm / 0.5)));
    a = std::ldexp(1.0, -squarings) * a;
  }
  // Horner evaluation of sum_{k=0}^{13} a^k / k!
  const int terms = 13;
  mat5 r = mat5::identity() + (1.0 / terms) * a;
  for (int k = terms - 1; k >= 1; --k) r = mat5::identity() + (1.0 / k) * (a * r);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

inline group_element expm(const mat5& m, double t = 1.0,
                          double tol = kSymplecticTol) {
  return group_element::from_mat5(expm5(m, t), tol);
}

inline group_element expm(const algebra_element& m, double t = 1.0,
                          double tol = kSymplecticTol) {
  return expm(m.as_mat5(), t, tol);
}

}  // namespace sympcurve
