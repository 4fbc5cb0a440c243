#pragma once

// Curve representations (closed-form via jet arithmetic, or uniform samples),
// jet extraction, symplectic curvatures and derived invariants, Lagrangian
// predicates, the symplectic arc-element and arc-length reparametrization.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "sympcurve/fd.hpp"
#include "sympcurve/group.hpp"
#include "sympcurve/jet.hpp"
#include "sympcurve/mat.hpp"
#include "sympcurve/quadrature.hpp"

namespace sympcurve {

constexpr int kMaxJetOrder = 6;

using vec4t = std::array<taylor, 4>;

inline taylor lambda(const vec4t& x, const vec4t& y) {
  return -(x[2] * y[0]) - x[3] * y[1] + x[0] * y[2] + x[1] * y[3];
}

// ---------------------------------------------------------------------------
// curve

class curve {
 public:
  // Evaluator of a closed-form curve: full Taylor jets of any order at any t.
  // Must be deterministic and stateless.
  using evaluator_fn = std::function<vec4t(double t, int order)>;

  struct sampled_data {
    double t0 = 0;
    double h = 0;
    std::vector<vec4> points;
  };

  static curve closed_form(evaluator_fn f) {
    curve c;
    c.eval_ = std::move(f);
    return c;
  }

  static curve from_samples(double t0, double h, std::vector<vec4> points) {
    if (points.size() < 9)
      throw invalid_parameters("sampled curve needs at least 9 points, got " +
                               std::to_string(points.size()));
    if (!(h > 0)) throw invalid_parameters("sampled curve needs h > 0");
    for (const auto& p : points)
      if (!finite(p)) throw nonfinite_input("sampled curve has non-finite points");
    curve c;
    c.sampled_ = sampled_data{t0, h, std::move(points)};
    return c;
  }

  bool is_closed_form() const { return bool(eval_); }
  bool is_sampled() const { return sampled_.has_value(); }
  const sampled_data& samples() const {
    if (!sampled_) throw error("curve is not sampled");
    return *sampled_;
  }

  vec4t eval(double t, int order) const {
    if (!eval_) throw error("curve has no closed-form evaluator");
    return eval_(t, order);
  }

  vec4 at(double t) const;

  double t_min() const {
    return sampled_ ? sampled_->t0 : -std::numeric_limits<double>::infinity();
  }
  double t_max() const {
    return sampled_ ? sampled_->t0 + sampled_->h * double(sampled_->points.size() - 1)
                    : std::numeric_limits<double>::infinity();
  }

  // Orientation flip t -> -t.
  curve flipped() const {
    if (eval_) {
      evaluator_fn f = eval_;
      return closed_form([f](double t, int order) {
        vec4t base = f(-t, order);  // g(t0+x) = f(-t0-x): flip odd coefficients
        vec4t out;
        for (int c = 0; c < 4; ++c) {
          taylor r(order);
          for (int k = 0; k <= order; ++k)
            r.coeff_ref(k) = (k % 2 ? -1.0 : 1.0) * base[std::size_t(c)].coeff(k);
          out[std::size_t(c)] = r;
        }
        return out;
      });
    }
    sampled_data s = *sampled_;
    std::reverse(s.points.begin(), s.points.end());
    s.t0 = -(s.t0 + s.h * double(s.points.size() - 1));
    return from_samples(s.t0, s.h, std::move(s.points));
  }

 private:
  evaluator_fn eval_;
  std::optional<sampled_data> sampled_;
};

// ---------------------------------------------------------------------------
// jets

struct curve_jet {
  double t = 0;
  std::vector<vec4> x;  // x[i] = i-th derivative column X^(i), i = 0..k

  int order() const { return int(x.size()) - 1; }
  const vec4& operator[](int i) const { return x[std::size_t(i)]; }
};

namespace detail {

// Symmetric stencil radius: O(h^4) for m <= 2, O(h^6) for the higher
// derivatives. Order 4 alone cannot push 5th-derivative noise below ~1e-6
// on O(1) data in doubles, which the curvature round-trip targets need.
inline int fd_radius(int m) {
  switch (m) {
    case 0:
    case 1:
    case 2: return 2;
    case 3: return 4;
    case 4:
    case 5: return 5;
    default: return 6;
  }
}

// Effective stencil spacing balancing O(H^4) truncation against the
// eps / H^(m-1) cancellation noise of m-th differences: H* ~ eps^(1/(m+3)).
inline double fd_optimal_spacing(int k) {
  switch (k) {
    case 0:
    case 1:
    case 2: return 2.4e-3;
    case 3: return 5.0e-3;
    case 4: return 8.0e-3;
    case 5: return 1.0e-2;
    default: return 1.3e-2;
  }
}

inline curve_jet sampled_jet(const curve::sampled_data& s, double t, int k) {
  const int n = int(s.points.size());
  const int radius = fd_radius(k);
  double u = (t - s.t0) / s.h;
  long nearest = std::lround(u);
  bool on_node = std::fabs(u - double(nearest)) < 1e-9;
  // if the grid is finer than the optimal FD spacing, stride across it
  int stride = std::max(1, int(std::lround(fd_optimal_spacing(k) / s.h)));
  {
    int margin = on_node ? int(std::min(nearest, long(n) - 1 - nearest))
                         : std::min(int(std::floor(u)), n - 2 - int(std::floor(u)));
    int width_half = on_node ? radius : (k + 5 + 1) / 2;
    if (margin >= width_half) stride = std::min(stride, margin / width_half);
    stride = std::max(1, stride);
  }
  int lo, hi;
  if (on_node) {
    lo = int(nearest) - radius * stride;
    hi = int(nearest) + radius * stride;
  } else {
    int width = k + 5;  // off-node: one extra point keeps O(h^4)
    lo = int(std::floor(u)) - ((width - 1) / 2) * stride;
    hi = lo + (width - 1) * stride;
  }
  if (lo < 0 || hi > n - 1)
    throw out_of_range_error("sampled jet at t=" + std::to_string(t) +
                             " needs " + std::to_string(fd_radius(k)) +
                             " points margin inside the grid");
  std::vector<double> xs;
  for (int i = lo; i <= hi; i += stride) xs.push_back(s.t0 + s.h * double(i));
  auto w = fd_weights(t, xs, k);
  curve_jet jet;
  jet.t = t;
  jet.x.assign(std::size_t(k) + 1, vec4{});
  // derivative weights sum to zero: differencing against a local reference
  // value removes the |gamma| * eps / h^m cancellation error
  const vec4& ref = s.points[std::size_t((lo + hi) / 2)];
  for (int m = 0; m <= k; ++m)
    for (int i = lo, col = 0; i <= hi; i += stride, ++col) {
      double wi = w[std::size_t(m)][std::size_t(col)];
      for (int c = 0; c < 4; ++c) {
        double v = s.points[std::size_t(i)][std::size_t(c)];
        if (m > 0) v -= ref[std::size_t(c)];
        jet.x[std::size_t(m)][std::size_t(c)] += wi * v;
      }
    }
  return jet;
}

}  // namespace detail

inline vec4 curve::at(double t) const {
  if (eval_) {
    vec4t v = eval_(t, 0);
    return {v[0].value(), v[1].value(), v[2].value(), v[3].value()};
  }
  // local polynomial interpolation on the 6 nearest samples
  const auto& s = *sampled_;
  const int n = int(s.points.size());
  double u = (t - s.t0) / s.h;
  long nearest = std::lround(u);
  if (std::fabs(u - double(nearest)) < 1e-12 && nearest >= 0 && nearest < n)
    return s.points[std::size_t(nearest)];
  int lo = std::clamp(int(std::floor(u)) - 2, 0, n - 6);
  std::vector<double> xs;
  for (int i = lo; i < lo + 6; ++i) xs.push_back(s.t0 + s.h * double(i));
  auto w = detail::fd_weights(t, xs, 0);
  vec4 out{};
  for (int i = 0; i < 6; ++i)
    for (int c = 0; c < 4; ++c)
      out[std::size_t(c)] += w[0][std::size_t(i)] * s.points[std::size_t(lo + i)][std::size_t(c)];
  return out;
}

inline curve_jet jet(const curve& c, double t, int k) {
  if (k > kMaxJetOrder)
    throw order_too_high("jet order " + std::to_string(k) + " exceeds " +
                         std::to_string(kMaxJetOrder));
  if (k < 0) throw invalid_parameters("negative jet order");
  if (c.is_closed_form()) {
    vec4t v = c.eval(t, k);
    curve_jet jet;
    jet.t = t;
    jet.x.assign(std::size_t(k) + 1, vec4{});
    for (int m = 0; m <= k; ++m)
      for (int cc = 0; cc < 4; ++cc)
        jet.x[std::size_t(m)][std::size_t(cc)] = v[std::size_t(cc)].deriv(m);
    return jet;
  }
  return detail::sampled_jet(c.samples(), t, k);
}

// ---------------------------------------------------------------------------
// invariants

struct invariant_report {
  double k1 = 0, k2 = 0, k3 = 0, k4 = 0;
  double k1p = 0, k1pp = 0, k2p = 0;
  double phi = 0;  // det(X^1..X^4); equals k2^2 - k1 k3 + k1p k2p - k2 k1pp
};

inline invariant_report curvatures(const curve_jet& jet) {
  if (jet.order() < 5)
    throw order_too_high("curvatures need a jet of order >= 5, got " +
                         std::to_string(jet.order()));
  invariant_report r;
  r.k1 = lambda(jet[1], jet[2]);
  r.k2 = lambda(jet[2], jet[3]);
  r.k3 = lambda(jet[3], jet[4]);
  r.k4 = lambda(jet[4], jet[5]);
  r.k1p = lambda(jet[1], jet[3]);
  r.k1pp = lambda(jet[1], jet[4]) + r.k2;
  r.k2p = lambda(jet[2], jet[4]);
  mat4 m;
  for (int j = 0; j < 4; ++j) m.set_col(j, jet[j + 1]);
  r.phi = det(m);
  return r;
}

inline double phi_identity(const invariant_report& r) {
  return r.k2 * r.k2 - r.k1 * r.k3 + r.k1p * r.k2p - r.k2 * r.k1pp;
}

// Curvatures with the higher derivatives needed by the Serret-Frenet
// matrices, all read off the jet through the Lambda identity table.
struct invariant_derivs {
  double k1 = 0, k2 = 0, k3 = 0, k4 = 0;
  double k1p = 0, k1pp = 0, k1ppp = 0;
  double k2p = 0, k2pp = 0;
  double k3p = 0;
  double k3pp = std::numeric_limits<double>::quiet_NaN();  // needs order 6
  double phi = 0, phip = 0;

  invariant_report report() const {
    return {k1, k2, k3, k4, k1p, k1pp, k2p, phi};
  }
};

inline invariant_derivs invariant_derivs_at(const curve_jet& jet) {
  if (jet.order() < 5)
    throw order_too_high("invariant derivatives need a jet of order >= 5");
  invariant_derivs d;
  d.k1 = lambda(jet[1], jet[2]);
  d.k2 = lambda(jet[2], jet[3]);
  d.k3 = lambda(jet[3], jet[4]);
  d.k4 = lambda(jet[4], jet[5]);
  d.k1p = lambda(jet[1], jet[3]);
  d.k1pp = lambda(jet[1], jet[4]) + d.k2;
  d.k1ppp = lambda(jet[1], jet[5]) + 2.0 * lambda(jet[2], jet[4]);
  d.k2p = lambda(jet[2], jet[4]);
  d.k2pp = lambda(jet[2], jet[5]) + d.k3;
  d.k3p = lambda(jet[3], jet[5]);
  if (jet.order() >= 6) d.k3pp = lambda(jet[4], jet[5]) + lambda(jet[3], jet[6]);
  mat4 m;
  for (int j = 0; j < 4; ++j) m.set_col(j, jet[j + 1]);
  d.phi = det(m);
  d.phip = 2.0 * d.k2 * d.k2p - d.k1p * d.k3 - d.k1 * d.k3p + d.k1p * d.k2pp -
           d.k2 * d.k1ppp;
  return d;
}

// ---------------------------------------------------------------------------
// group action on jets

inline curve_jet act_on_jet(const group_element& g, const curve_jet& jet) {
  curve_jet out;
  out.t = jet.t;
  out.x.reserve(jet.x.size());
  for (std::size_t i = 0; i < jet.x.size(); ++i) {
    vec4 col = g.A * jet.x[i];
    if (i == 0) col = col + g.a;
    out.x.push_back(col);
  }
  return out;
}

// ---------------------------------------------------------------------------
// predicates

struct predicate_report {
  bool lagrangian = false;
  bool nondegenerate = false;
  bool linearly_full = false;
  double lagrangian_residual = 0;   // max |Lambda(g', g'')|
  double min_k2 = 0;                // min |Lambda(g'', g''')|
  double min_full = 0;              // min |det(g', .., g'''')|
};

inline predicate_report predicates(const curve& c, double a, double b,
                                   int nsamples = 201, double tol = 1e-9) {
  predicate_report r;
  r.min_k2 = std::numeric_limits<double>::infinity();
  r.min_full = std::numeric_limits<double>::infinity();
  double scale = 0;
  double min_rank2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i < nsamples; ++i) {
    double t = a + (b - a) * double(i) / double(nsamples - 1);
    curve_jet j = jet(c, t, 4);
    double l12 = std::fabs(lambda(j[1], j[2]));
    double l23 = std::fabs(lambda(j[2], j[3]));
    mat4 m;
    for (int k = 0; k < 4; ++k) m.set_col(k, j[k + 1]);
    r.lagrangian_residual = std::max(r.lagrangian_residual, l12);
    r.min_k2 = std::min(r.min_k2, l23);
    r.min_full = std::min(r.min_full, std::fabs(det(m)));
    double g11 = dot(j[1], j[1]), g22 = dot(j[2], j[2]), g12 = dot(j[1], j[2]);
    min_rank2 = std::min(min_rank2, g11 * g22 - g12 * g12);
    scale = std::max({scale, norm(j[1]), norm(j[2]), norm(j[3])});
  }
  double s2 = std::max(1.0, scale * scale);
  r.lagrangian = r.lagrangian_residual <= tol * s2 && min_rank2 > tol * s2 * s2;
  r.nondegenerate = r.min_k2 > tol * s2;
  r.linearly_full = r.min_full > tol * s2 * s2;
  if (r.lagrangian && r.linearly_full && !r.nondegenerate)
    throw error("inconsistent predicates: full Lagrangian curve must be non-degenerate");
  return r;
}

struct lagrangian_check {
  bool lagrangian = false;
  double max_residual = 0;
};

inline lagrangian_check is_lagrangian(const curve& c, double a, double b,
                                      double tol = 1e-9, int nsamples = 201) {
  predicate_report p = predicates(c, a, b, nsamples, tol);
  return {p.lagrangian, p.lagrangian_residual};
}

// ---------------------------------------------------------------------------
// symplectic arc-element

// sigma^5 = Lambda(g'', g''') at t.
inline double sigma_pow5(const curve& c, double t) {
  curve_jet j = jet(c, t, 3);
  return lambda(j[2], j[3]);
}

// Value of the arc-element Lambda(g'',g''')^(1/5); requires the intrinsic
// orientation Lambda(g'',g''') > 0.
inline double sigma(const curve& c, double t) {
  double s5 = sigma_pow5(c, t);
  if (!(s5 > 0))
    throw orientation_violation("Lambda(g'',g''') = " + std::to_string(s5) +
                                " <= 0 at t = " + std::to_string(t));
  return std::pow(s5, 0.2);
}

inline double symplectic_length(const curve& c, double a, double b,
                                double tol = 1e-11) {
  return adaptive_simpson([&](double t) { return sigma(c, t); }, a, b, tol);
}

struct arclength_result {
  curve reparametrized;       // sampled, uniform in arc-length, s0 = 0
  double length = 0;          // total symplectic length of [a, b]
  std::vector<double> t_of_s; // parameter values of the output samples
};

inline arclength_result arclength_reparam(const curve& c, double a, double b,
                                          int n_out = 0) {
  {
    lagrangian_check lc = is_lagrangian(c, a, b);
    if (!lc.lagrangian)
      throw not_lagrangian("arclength_reparam: curve is not Lagrangian on the window "
                           "(residual " + std::to_string(lc.max_residual) + ")");
  }
  // dense cumulative table of s(t); 5-point Gauss per panel
  const int panels = 2000;
  static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
  static const double gw[5] = {0.2369268850561891, 0.4786286704993665,
                               0.5688888888888889, 0.4786286704993665,
                               0.2369268850561891};
  std::vector<double> ts(panels + 1), ss(panels + 1);
  double ht = (b - a) / panels;
  ts[0] = a;
  ss[0] = 0;
  for (int i = 0; i < panels; ++i) {
    double t0 = a + i * ht, t1 = t0 + ht;
    double mid = 0.5 * (t0 + t1), half = 0.5 * ht;
    double acc = 0;
    for (int q = 0; q < 5; ++q) acc += gw[q] * sigma(c, mid + half * gx[q]);
    ts[std::size_t(i) + 1] = t1;
    ss[std::size_t(i) + 1] = ss[std::size_t(i)] + acc * half;
  }
  double length = ss.back();
  if (n_out <= 0) {
    // spacing ~2.5e-3 keeps the FD measurement error of sigma near 1e-8
    n_out = int(std::clamp(length / 2.5e-3, 1001.0, 40001.0));
    if (n_out % 2 == 0) ++n_out;
  }
  double ds = length / double(n_out - 1);
  std::vector<vec4> pts(static_cast<std::size_t>(n_out));
  std::vector<double> tgrid(static_cast<std::size_t>(n_out));
  std::size_t seg = 0;
  for (int j = 0; j < n_out; ++j) {
    double target = ds * j;
    while (seg + 1 < ss.size() && ss[seg + 1] < target) ++seg;
    double t = ts[seg];
    if (seg + 1 < ss.size() && ss[seg + 1] > ss[seg]) {
      double f = (target - ss[seg]) / (ss[seg + 1] - ss[seg]);
      t = ts[seg] + f * (ts[seg + 1] - ts[seg]);
    }
    for (int it = 0; it < 8; ++it) {  // Newton on s(t) - target
      double resid;
      {
        // s(t) = ss[seg] + integral from ts[seg] to t
        double t0 = ts[seg], mid = 0.5 * (t0 + t), half = 0.5 * (t - t0);
        double acc = 0;
        for (int q = 0; q < 5; ++q) acc += gw[q] * sigma(c, mid + half * gx[q]);
        resid = ss[seg] + acc * half - target;
      }
      double dt = resid / sigma(c, t);
      t -= dt;
      t = std::clamp(t, a, b);
      if (std::fabs(dt) < 1e-15 * std::max(1.0, std::fabs(t))) break;
    }
    tgrid[std::size_t(j)] = t;
    pts[std::size_t(j)] = c.at(t);
  }
  arclength_result out{curve::from_samples(0.0, ds, std::move(pts)), length,
                       std::move(tgrid)};
  return out;
}

}  // namespace sympcurve
