#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "sympcurve/classify.hpp"
#include "sympcurve/curve.hpp"
#include "sympcurve/frames.hpp"
#include "test_helpers.hpp"

using namespace sympcurve;
namespace tt = sympcurve::testing;

static curve line_curve(vec4 p, vec4 v) {
  return curve::closed_form([p, v](double t, int n) -> vec4t {
    taylor s = taylor::variable(t, n);
    vec4t out;
    for (int c = 0; c < 4; ++c)
      out[std::size_t(c)] = p[std::size_t(c)] + v[std::size_t(c)] * s;
    return out;
  });
}

TEST_CASE("jet of a line") {
  curve l = line_curve({1, 2, 3, 4}, {0.5, -1, 2, 0});
  curve_jet j = jet(l, 7.7, 3);
  CHECK(norm(j[1] - vec4{0.5, -1, 2, 0}) == 0.0);
  CHECK(norm(j[2]) == 0.0);
  CHECK(norm(j[3]) == 0.0);
}

TEST_CASE("jet of the type IV polynomial at t = 1") {
  curve c = generate({case_tag::IV, 0, 0});
  curve_jet j = jet(c, 1.0, 4);
  vec4 want{0, 0, -24.0 / std::sqrt(24.0), 0};
  CHECK(norm(j[4] - want) < 1e-13);
}

TEST_CASE("jet order cap and sampled margins") {
  curve c = generate({case_tag::IV, 0, 0});
  CHECK_THROWS_AS(jet(c, 0.0, 7), order_too_high);

  std::vector<vec4> pts(21, vec4{});
  for (int i = 0; i < 21; ++i) {
    double t = 0.1 * i;
    pts[std::size_t(i)] = {std::cos(t), std::sin(t), t, t * t};
  }
  curve s = curve::from_samples(0.0, 0.1, pts);
  CHECK_NOTHROW(jet(s, 1.0, 4));
  CHECK_THROWS_AS(jet(s, 0.1, 4), out_of_range_error);   // margin too small
  CHECK_THROWS_AS(jet(s, -1.0, 2), out_of_range_error);  // outside the window
}

TEST_CASE("sampled jets converge at fourth order") {
  // cosine circle in the (x1, x3) plane, sampled at h and h/2
  auto make_sampled = [](double h, int n) {
    std::vector<vec4> pts;
    for (int i = 0; i < n; ++i) {
      double t = -0.5 + h * i;
      pts.push_back({std::cos(t), 0.1 * t, std::sin(t), 0.3});
    }
    return curve::from_samples(-0.5, h, pts);
  };
  curve exact = curve::closed_form([](double t, int n) -> vec4t {
    taylor s = taylor::variable(t, n);
    return {cos(s), 0.1 * s, sin(s), taylor::constant(0.3, n)};
  });
  double t0 = 0.3;  // a node of both grids, away from symmetry points of cos
  for (int m = 1; m <= 4; ++m) {
    // h large enough that truncation, not roundoff (~eps/h^m), dominates
    double h1 = 0.16, h2 = 0.08;
    curve c1 = make_sampled(h1, 51), c2 = make_sampled(h2, 101);
    double e1 = norm(jet(c1, t0, m)[m] - jet(exact, t0, m)[m]);
    double e2 = norm(jet(c2, t0, m)[m] - jet(exact, t0, m)[m]);
    double rate = e1 / std::max(e2, 1e-300);
    // O(h^4): halving h divides the error by about 16
    CHECK(rate > 10.0);
    CHECK(rate < 26.0);
    CHECK(e2 < 2e-4 * std::pow(4.0, m));
  }
}

TEST_CASE("sampled curve validation") {
  std::vector<vec4> five(5, vec4{});
  CHECK_THROWS_AS(curve::from_samples(0, 0.1, five), invalid_parameters);
  std::vector<vec4> nine(9, vec4{});
  CHECK_THROWS_AS(curve::from_samples(0, -0.1, nine), invalid_parameters);
}

TEST_CASE("curvatures of classified examples") {
  // type IV: (0, 1, 0, 0)
  {
    curve c = generate({case_tag::IV, 0, 0});
    invariant_report r = curvatures(jet(c, 0.7, 5));
    CHECK(r.k1 == Catch::Approx(0.0).margin(1e-12));
    CHECK(r.k2 == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(r.k3 == Catch::Approx(0.0).margin(1e-12));
    CHECK(r.k4 == Catch::Approx(0.0).margin(1e-12));
  }
  // I.2.b with mu = 1.5, nu = 0.5: k3 = 2.5, k4 = 5.6875
  {
    curve c = generate({case_tag::I2b, 1.5, 0.5});
    invariant_report r = curvatures(jet(c, 1.3, 5));
    CHECK(r.k1 == Catch::Approx(0.0).margin(1e-12));
    CHECK(r.k2 == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(r.k3 == Catch::Approx(2.5).epsilon(1e-12));
    CHECK(r.k4 == Catch::Approx(5.6875).epsilon(1e-12));
  }
}

TEST_CASE("curvatures require order 5") {
  curve c = generate({case_tag::IV, 0, 0});
  CHECK_THROWS_AS(curvatures(jet(c, 0.5, 4)), order_too_high);
}

TEST_CASE("identity table along smooth curves") {
  // k1' = L(X1,X3), k1'' - k2 = L(X1,X4), k2' = L(X2,X4), k3' = L(X3,X5),
  // k1''' - 2k2' = L(X1,X5), k2'' - k3 = L(X2,X5); derivatives taken of the
  // curvature functions themselves (jet-valued route)
  for (std::uint64_t seed : {21u, 22u, 23u, 24u}) {
    curve c = tt::random_trig_curve(seed);
    for (double t : {-0.4, 0.3, 1.1}) {
      vec4t v = c.eval(t, 7);
      auto X = [&](int i) {
        vec4t r;
        for (int k = 0; k < 4; ++k)
          r[std::size_t(k)] = v[std::size_t(k)].shift_derivative(i);
        return r;
      };
      taylor k1 = lambda(X(1), X(2));
      taylor k2 = lambda(X(2), X(3));
      taylor k3 = lambda(X(3), X(4));
      curve_jet j = jet(c, t, 6);
      double scale = std::max(1.0, detail::jet_scale(j));
      CHECK(std::fabs(lambda(j[1], j[3]) - k1.deriv(1)) < 1e-7 * scale);
      CHECK(std::fabs(lambda(j[1], j[4]) - (k1.deriv(2) - k2.deriv(0))) < 1e-7 * scale);
      CHECK(std::fabs(lambda(j[2], j[4]) - k2.deriv(1)) < 1e-7 * scale);
      CHECK(std::fabs(lambda(j[3], j[5]) - k3.deriv(1)) < 1e-7 * scale);
      CHECK(std::fabs(lambda(j[1], j[5]) - (k1.deriv(3) - 2.0 * k2.deriv(1))) < 1e-7 * scale);
      // the printed list labels this one L(X1,X5) = k2' - k3; the identity
      // that holds is L(X2,X5) = k2'' - k3
      CHECK(std::fabs(lambda(j[2], j[5]) - (k2.deriv(2) - k3.deriv(0))) < 1e-7 * scale);
    }
  }
}

TEST_CASE("phi identity on random jets") {
  auto g = tt::rng(31);
  for (int i = 0; i < 100; ++i) {
    curve_jet j = tt::random_jet(g, 5);
    invariant_report r = curvatures(j);
    double scale = std::max(1.0, std::fabs(r.phi));
    CHECK(std::fabs(r.phi - phi_identity(r)) < 1e-12 * scale);
  }
}

TEST_CASE("curvature invariance under the group action") {
  auto g = tt::rng(32);
  for (int rep = 0; rep < 50; ++rep) {
    group_element ge = tt::random_group_element(g);
    curve_jet j = tt::random_jet(g, 5);
    invariant_report a = curvatures(j);
    invariant_report b = curvatures(act_on_jet(ge, j));
    double s = std::max({1.0, std::fabs(a.k1), std::fabs(a.k2), std::fabs(a.k3),
                         std::fabs(a.k4)});
    CHECK(std::fabs(a.k1 - b.k1) < 1e-9 * s);
    CHECK(std::fabs(a.k2 - b.k2) < 1e-9 * s);
    CHECK(std::fabs(a.k3 - b.k3) < 1e-9 * s);
    CHECK(std::fabs(a.k4 - b.k4) < 1e-9 * s);
    CHECK(std::fabs(a.phi - b.phi) < 1e-9 * std::max(1.0, std::fabs(a.phi)));
  }
}

TEST_CASE("act_on_jet translation touches only the position") {
  auto g = tt::rng(33);
  group_element tr;
  tr.a = {1, -2, 0.5, 3};
  curve_jet j = tt::random_jet(g, 4);
  curve_jet out = act_on_jet(tr, j);
  CHECK(norm(out[0] - (j[0] + tr.a)) == 0.0);
  for (int i = 1; i <= 4; ++i) CHECK(norm(out[i] - j[i]) == 0.0);
}

TEST_CASE("lagrangian predicate") {
  // type IV is Lagrangian
  {
    auto [ok, res] = is_lagrangian(generate({case_tag::IV, 0, 0}), 0.2, 2.0);
    CHECK(ok);
    CHECK(res < 1e-10);
  }
  // (t, 0, t^2, 0): L(g', g'') = 2t != 0
  {
    curve c = curve::closed_form([](double t, int n) -> vec4t {
      taylor s = taylor::variable(t, n);
      return {s, taylor::constant(0, n), s * s, taylor::constant(0, n)};
    });
    auto [ok, res] = is_lagrangian(c, 0.5, 1.5);
    CHECK_FALSE(ok);
    CHECK(res > 0.9);
  }
  // planar curve in span(e1, e2): Lambda == 0, Lagrangian iff g' ^ g'' != 0
  {
    curve c = curve::closed_form([](double t, int n) -> vec4t {
      taylor s = taylor::variable(t, n);
      return {cos(s), sin(s), taylor::constant(0, n), taylor::constant(0, n)};
    });
    auto [ok, res] = is_lagrangian(c, 0.0, 1.0);
    CHECK(ok);
    CHECK(res < 1e-14);
  }
}

TEST_CASE("predicates on classified and degenerate curves") {
  {
    predicate_report p = predicates(generate({case_tag::IV, 0, 0}), 0.3, 2.0);
    CHECK(p.lagrangian);
    CHECK(p.nondegenerate);
    CHECK(p.linearly_full);
  }
  {
    predicate_report p = predicates(generate({case_tag::I2b, 1.5, 0.5}), 0.0, 5.0);
    CHECK(p.lagrangian);
    CHECK(p.nondegenerate);
    CHECK(p.linearly_full);
  }
  {
    predicate_report p = predicates(line_curve({0, 0, 0, 0}, {1, 1, 0, 0}), 0, 1);
    CHECK_FALSE(p.lagrangian);  // rank(g', g'') = 1
    CHECK_FALSE(p.nondegenerate);
    CHECK_FALSE(p.linearly_full);
  }
}

TEST_CASE("lagrangian predicate survives dilation, symplectic maps, reparam") {
  curve base = generate({case_tag::I2b, 1.2, 0.7});
  auto g = tt::rng(34);
  group_element phi = tt::random_group_element(g);
  double r = 2.7;
  // r * Phi(gamma(h(t))) with h(t) = 0.8 t + 0.1 sin t (monotone)
  curve warped = curve::closed_form([base, phi, r](double t, int n) -> vec4t {
    taylor tv = taylor::variable(t, n);
    taylor ht = 0.8 * tv + 0.1 * sin(tv);
    double h0 = ht.value();
    vec4t bj = base.eval(h0, n);
    vec4t out;
    for (int c = 0; c < 4; ++c) {
      // Taylor of component-after-h by Horner composition in (ht - h0)
      taylor comp = taylor::constant(bj[std::size_t(c)].coeff(n), n);
      taylor dx = ht - h0;
      for (int k = n - 1; k >= 0; --k)
        comp = comp * dx + bj[std::size_t(c)].coeff(k);
      out[std::size_t(c)] = comp;
    }
    vec4t res;
    for (int i = 0; i < 4; ++i) {
      taylor acc = taylor::constant(r * phi.a[std::size_t(i)], n);
      for (int j2 = 0; j2 < 4; ++j2)
        acc = acc + (r * phi.A(i, j2)) * out[std::size_t(j2)];
      res[std::size_t(i)] = acc;
    }
    return res;
  });
  auto [ok0, r0] = is_lagrangian(base, 0.1, 2.0);
  auto [ok1, r1] = is_lagrangian(warped, 0.1, 2.0, 1e-7);
  CHECK(ok0);
  CHECK(ok1);
  (void)r0;
  (void)r1;
}

TEST_CASE("sigma and arclength") {
  // IV is already arc-length: sigma == 1, reparametrization is the identity
  curve c = generate({case_tag::IV, 0, 0});
  CHECK(sigma(c, 0.9) == Catch::Approx(1.0).epsilon(1e-12));
  arclength_result ar = arclength_reparam(c, 0.0, 2.0, 501);
  CHECK(ar.length == Catch::Approx(2.0).epsilon(1e-10));
  // measured sigma of the output stays within 1e-6
  for (double s : {0.2, 0.9, 1.7}) {
    curve_jet j = jet(ar.reparametrized, s, 3);
    CHECK(std::fabs(lambda(j[2], j[3]) - 1.0) < 1e-6);
  }
}

TEST_CASE("arclength is parametrization independent") {
  curve c = generate({case_tag::I2b, 1.5, 0.5});
  // same arc under t -> 2t
  curve fast = curve::closed_form([c](double t, int n) -> vec4t {
    vec4t base = c.eval(2.0 * t, n);
    vec4t out;
    for (int comp = 0; comp < 4; ++comp) {
      taylor r(n);
      double f = 1.0;
      for (int k = 0; k <= n; ++k) {
        r.coeff_ref(k) = base[std::size_t(comp)].coeff(k) * f;
        f *= 2.0;
      }
      out[std::size_t(comp)] = r;
    }
    return out;
  });
  double l1 = symplectic_length(c, 0.0, 3.0);
  double l2 = symplectic_length(fast, 0.0, 1.5);
  CHECK(l1 == Catch::Approx(l2).epsilon(1e-7));
  // arc-length parametrization: length of [0, L] equals L (sigma == 1)
  CHECK(l1 == Catch::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("length of one period of I.2.b(1.5, 0.5) is about 12.5664") {
  curve c = generate({case_tag::I2b, 1.5, 0.5});
  double period = 4.0 * std::numbers::pi;  // 2 pi n / nu with n = 1, nu = 1/2
  double len = symplectic_length(c, 0.0, period);
  CHECK(len == Catch::Approx(12.5664).margin(1e-3));
}

TEST_CASE("orientation violations are detected, flip helper repairs them") {
  curve c = generate({case_tag::I2b, 1.5, 0.5});
  curve r = c.flipped();
  CHECK(sigma_pow5(r, 0.3) < 0);
  CHECK_THROWS_AS(sigma(r, 0.3), orientation_violation);
  curve rr = r.flipped();
  CHECK(sigma_pow5(rr, 0.3) > 0);
}

TEST_CASE("arclength rejects non-Lagrangian input") {
  curve c = curve::closed_form([](double t, int n) -> vec4t {
    taylor s = taylor::variable(t, n);
    return {s, s * s, s * s * s, pow(s, 4)};
  });
  CHECK_THROWS_AS(arclength_reparam(c, 0.5, 1.5), not_lagrangian);
}
