#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "sympcurve/classify.hpp"
#include "sympcurve/osculating.hpp"
#include "sympcurve/portrait.hpp"
#include "test_helpers.hpp"

using namespace sympcurve;
namespace tt = sympcurve::testing;

TEST_CASE("portrait splits coordinates and round-trips") {
  vec4 x{1.5, -2.0, 3.0, 0.25};
  vec2 a = portrait_a(x), b = portrait_b(x);
  CHECK(a == vec2{1.5, 3.0});
  CHECK(b == vec2{2.0, 0.25});
  CHECK(curve_from_portraits(a, b) == x);
}

TEST_CASE("Lagrangian curves have matching areal speeds") {
  for (auto c : {class_case{case_tag::I2b, 1.5, 0.5},
                 class_case{case_tag::II2, 1.0, 0},
                 class_case{case_tag::IV, 0, 0}}) {
    phase_portrait p = phase_portraits(generate(c), 0.1, 4.0, 501);
    CHECK(p.dpair_residual < 1e-8);
  }
}

TEST_CASE("a curve within span(e1, e3) has a constant b portrait") {
  curve c = curve::closed_form([](double t, int n) -> vec4t {
    taylor s = taylor::variable(t, n);
    return {cos(s), taylor::constant(0.7, n), sin(s), taylor::constant(-0.3, n)};
  });
  phase_portrait p = phase_portraits(c, 0.0, 3.0, 101);
  for (int i = 0; i < p.size(); ++i) {
    CHECK(p.b[std::size_t(i)][0] == -0.7);
    CHECK(p.b[std::size_t(i)][1] == -0.3);
  }
}

TEST_CASE("dpair witness on identical portraits is the identity") {
  curve c = curve::closed_form([](double t, int n) -> vec4t {
    taylor s = taylor::variable(t, n);
    // a == b: gamma = (a1, -a1, a2, a2) with a = unit circle
    return {cos(s), -cos(s), sin(s), sin(s)};
  });
  phase_portrait p = phase_portraits(c, 0.0, 6.0, 2401);
  dpair_data d = dpair_witness(p, 2.5);
  CHECK(d.det_A == Catch::Approx(1.0).epsilon(1e-9));
  CHECK(std::fabs(d.A[0][0] - 1.0) < 1e-7);
  CHECK(std::fabs(d.A[1][1] - 1.0) < 1e-7);
  CHECK(std::fabs(d.A[0][1]) < 1e-7);
  CHECK(std::fabs(d.A[1][0]) < 1e-7);
  CHECK(std::fabs(d.T[0]) < 1e-7);
  CHECK(std::fabs(d.T[1]) < 1e-7);
}

TEST_CASE("dpair witness has det 1 and matches the 2-jet on I.2.b") {
  curve c = generate({case_tag::I2b, 1.5, 0.5});
  double period = 4.0 * std::numbers::pi;
  phase_portrait p = phase_portraits(c, 0.0, period, 5001);
  auto g = tt::rng(41);
  for (int i = 0; i < 100; ++i) {
    double t = tt::uniform(g, 0.3, period - 0.3);
    dpair_data d = dpair_witness(p, t);
    CHECK(std::fabs(d.det_A - 1.0) < 1e-9);
    // A a + T = b, A a' = b', A a'' = b'' within 1e-8
    curve_jet j = jet(c, t, 2);
    vec2 a0 = portrait_a(j[0]), b0 = portrait_b(j[0]);
    vec2 a1{j[1][0], j[1][2]}, b1{-j[1][1], j[1][3]};
    vec2 a2{j[2][0], j[2][2]}, b2{-j[2][1], j[2][3]};
    auto apply = [&](const vec2& v) {
      return vec2{d.A[0][0] * v[0] + d.A[0][1] * v[1],
                  d.A[1][0] * v[0] + d.A[1][1] * v[1]};
    };
    vec2 m0 = apply(a0);
    CHECK(std::fabs(m0[0] + d.T[0] - b0[0]) < 1e-8);
    CHECK(std::fabs(m0[1] + d.T[1] - b0[1]) < 1e-8);
    vec2 m1 = apply(a1), m2 = apply(a2);
    CHECK(std::fabs(m1[0] - b1[0]) < 1e-7);
    CHECK(std::fabs(m1[1] - b1[1]) < 1e-7);
    CHECK(std::fabs(m2[0] - b2[0]) < 1e-6);
    CHECK(std::fabs(m2[1] - b2[1]) < 1e-6);
  }
}

TEST_CASE("two circles with equal areal speed: the witness is their relative rotation") {
  // a = circle radius 1 at angular speed 1; b = same circle rotated by phi0.
  // gamma = (a1, -b1, a2, b2) is Lagrangian since a'^a'' = b'^b'' = 1.
  double phi0 = 0.65;
  curve c = curve::closed_form([phi0](double t, int n) -> vec4t {
    taylor s = taylor::variable(t, n);
    return {cos(s), -cos(s + phi0), sin(s), sin(s + phi0)};
  });
  phase_portrait p = phase_portraits(c, 0.0, 6.3, 2521);
  CHECK(p.dpair_residual < 1e-9);
  dpair_data d = dpair_witness(p, 3.0);
  CHECK(d.det_A == Catch::Approx(1.0).epsilon(1e-9));
  CHECK(d.A[0][0] == Catch::Approx(std::cos(phi0)).margin(1e-7));
  CHECK(d.A[0][1] == Catch::Approx(-std::sin(phi0)).margin(1e-7));
  CHECK(d.A[1][0] == Catch::Approx(std::sin(phi0)).margin(1e-7));
  CHECK(d.A[1][1] == Catch::Approx(std::cos(phi0)).margin(1e-7));
}

TEST_CASE("inflection points are rejected") {
  // type IV portraits have a' ^ a'' = -t^2/2 -> inflection at t = 0
  curve c = generate({case_tag::IV, 0, 0});
  phase_portrait p = phase_portraits(c, -1.0, 1.0, 801);
  CHECK_THROWS_AS(dpair_witness(p, 0.0), inflection_point);
  CHECK_NOTHROW(dpair_witness(p, 0.8));
}

// --- osculating curve -------------------------------------------------------

TEST_CASE("osculating curve is null along classified curves") {
  for (auto cc : {class_case{case_tag::I2b, 1.5, 0.5},
                  class_case{case_tag::I2a, 1.4, 0.6},
                  class_case{case_tag::I2c, 1.1, 0.8},
                  class_case{case_tag::I1, 1.0, 0.6},
                  class_case{case_tag::II1, 1.2, 0},
                  class_case{case_tag::II2, 0.9, 0},
                  class_case{case_tag::III1, 1.1, 0},
                  class_case{case_tag::III2, 0.8, 0},
                  class_case{case_tag::IV, 0, 0}}) {
    curve c = generate(cc);
    double a = (cc.tag == case_tag::IV) ? 0.4 : 0.0;
    osculating_report r = osculating_null_check(c, a, a + 2.0, 101);
    INFO(to_string(cc.tag));
    CHECK(r.max_null_residual < 1e-8);
    CHECK(r.min_magnitude > 0.5);  // c22 = k2 = 1 on arc-length curves
  }
}

TEST_CASE("second-order frame matches the normal form (0 0; 0 k2)") {
  curve c = generate({case_tag::I2b, 1.5, 0.5});
  for (double t : {0.3, 1.1, 2.9}) {
    osculating_point p = osculating_at(c, t);
    CHECK(std::fabs(p.c11) < 1e-10);
    CHECK(std::fabs(p.c21) < 1e-10);
    CHECK(p.c22 == Catch::Approx(1.0).epsilon(1e-9));  // k2 of an arc-length curve
  }
}

TEST_CASE("degenerate input fails the completion") {
  curve line = curve::closed_form([](double t, int n) -> vec4t {
    taylor s = taylor::variable(t, n);
    return {s, 2.0 * s, taylor::constant(1.0, n), taylor::constant(0.0, n)};
  });
  CHECK_THROWS_AS(osculating_at(line, 0.5), frame_completion_failed);
  // non-Lagrangian curves cannot complete with E1 = g', E2 = g''
  curve nl = curve::closed_form([](double t, int n) -> vec4t {
    taylor s = taylor::variable(t, n);
    return {s, s * s, s * s * s, pow(s, 4) + sin(s)};
  });
  CHECK_THROWS_AS(osculating_at(nl, 0.8), frame_completion_failed);
}
