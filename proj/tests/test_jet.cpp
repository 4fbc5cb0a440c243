#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sympcurve/jet.hpp"

using namespace sympcurve;

TEST_CASE("taylor arithmetic against hand derivatives") {
  double t0 = 0.37;
  taylor t = taylor::variable(t0, 6);

  taylor p = t * t * t - 2.0 * t + 5.0;
  CHECK(p.deriv(0) == Catch::Approx(t0 * t0 * t0 - 2 * t0 + 5).epsilon(1e-15));
  CHECK(p.deriv(1) == Catch::Approx(3 * t0 * t0 - 2).epsilon(1e-15));
  CHECK(p.deriv(2) == Catch::Approx(6 * t0).epsilon(1e-15));
  CHECK(p.deriv(3) == Catch::Approx(6.0).epsilon(1e-15));
  CHECK(p.deriv(4) == 0.0);

  taylor q = sin(2.0 * t);
  CHECK(q.deriv(0) == Catch::Approx(std::sin(2 * t0)).epsilon(1e-15));
  CHECK(q.deriv(1) == Catch::Approx(2 * std::cos(2 * t0)).epsilon(1e-15));
  CHECK(q.deriv(2) == Catch::Approx(-4 * std::sin(2 * t0)).epsilon(1e-14));
  CHECK(q.deriv(5) == Catch::Approx(32 * std::cos(2 * t0)).epsilon(1e-14));

  taylor r = exp(t * t);
  double e0 = std::exp(t0 * t0);
  CHECK(r.deriv(0) == Catch::Approx(e0).epsilon(1e-15));
  CHECK(r.deriv(1) == Catch::Approx(2 * t0 * e0).epsilon(1e-14));
  CHECK(r.deriv(2) == Catch::Approx((4 * t0 * t0 + 2) * e0).epsilon(1e-14));
}

TEST_CASE("composition identities hold to roundoff") {
  for (double t0 : {-1.1, 0.2, 0.9}) {
    taylor t = taylor::variable(t0, 8);
    taylor f = 0.3 * t * t + sin(t);

    taylor lhs = sin(f) * sin(f) + cos(f) * cos(f);
    for (int k = 0; k <= 8; ++k)
      CHECK(lhs.coeff(k) == Catch::Approx(k == 0 ? 1.0 : 0.0).margin(1e-13));

    taylor g = cosh(f) * cosh(f) - sinh(f) * sinh(f);
    for (int k = 0; k <= 8; ++k)
      CHECK(g.coeff(k) == Catch::Approx(k == 0 ? 1.0 : 0.0).margin(1e-12));

    taylor h = exp(log(f + 3.0));
    for (int k = 0; k <= 8; ++k)
      CHECK(h.coeff(k) ==
            Catch::Approx((f + 3.0).coeff(k)).epsilon(1e-12).margin(1e-13));

    taylor s = sqrt(f + 3.0);
    taylor s2 = s * s;
    for (int k = 0; k <= 8; ++k)
      CHECK(s2.coeff(k) ==
            Catch::Approx((f + 3.0).coeff(k)).epsilon(1e-12).margin(1e-13));

    taylor pw = pow(f + 3.0, 5) - pow(f + 3.0, 5.0);
    for (int k = 0; k <= 8; ++k) CHECK(std::fabs(pw.coeff(k)) < 1e-10);
  }
}

TEST_CASE("division and shift_derivative") {
  taylor t = taylor::variable(0.5, 6);
  taylor f = (1.0 + t * t) / (2.0 - t);
  taylor back = f * (2.0 - t);
  for (int k = 0; k <= 6; ++k)
    CHECK(back.coeff(k) ==
          Catch::Approx((1.0 + t * t).coeff(k)).margin(1e-14));

  taylor g = sin(t);
  taylor gp = g.shift_derivative(1);
  CHECK(gp.order() == 5);
  for (int k = 0; k <= 5; ++k)
    CHECK(gp.deriv(k) == Catch::Approx(g.deriv(k + 1)).epsilon(1e-14));
}

TEST_CASE("taylor error paths") {
  taylor t = taylor::variable(0.0, 4);
  CHECK_THROWS_AS(1.0 / t, error);         // division by zero value
  CHECK_THROWS_AS(log(t), error);          // log at 0
  CHECK_THROWS_AS(pow(t, 0.5), error);     // fractional power at 0
}
