#pragma once

// Shared generators for randomized tests. Everything is seeded explicitly so
// runs are reproducible.

#include <random>

#include "sympcurve/curve.hpp"
#include "sympcurve/group.hpp"

namespace sympcurve::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// Random element of S(4,R) through the exponential of a random algebra
// element, so the linear part is symplectic to roundoff.
inline group_element random_group_element(std::mt19937_64& g, double scale = 1.0) {
  algebra_element a;
  for (double& c : a.c) c = scale * uniform(g, -1.0, 1.0);
  return expm(a);
}

inline vec4 random_vec4(std::mt19937_64& g, double scale = 1.0) {
  return {scale * uniform(g, -1.0, 1.0), scale * uniform(g, -1.0, 1.0),
          scale * uniform(g, -1.0, 1.0), scale * uniform(g, -1.0, 1.0)};
}

inline curve_jet random_jet(std::mt19937_64& g, int order, double scale = 1.0) {
  curve_jet j;
  j.t = uniform(g, -1.0, 1.0);
  for (int i = 0; i <= order; ++i) j.x.push_back(random_vec4(g, scale));
  return j;
}

// Smooth trigonometric curve with random coefficients; jets of any order.
inline curve random_trig_curve(std::uint64_t seed, int nfreq = 3) {
  auto g = rng(seed);
  std::array<std::array<double, 8>, 4> amp{};
  std::array<double, 8> freq{};
  for (int k = 0; k < nfreq; ++k) freq[std::size_t(k)] = uniform(g, 0.4, 2.3);
  for (int c = 0; c < 4; ++c)
    for (int k = 0; k < 2 * nfreq; ++k)
      amp[std::size_t(c)][std::size_t(k)] = uniform(g, -1.0, 1.0);
  return curve::closed_form([amp, freq, nfreq](double t, int n) -> vec4t {
    taylor s = taylor::variable(t, n);
    vec4t out;
    for (int c = 0; c < 4; ++c) {
      taylor acc = taylor::constant(0.0, n);
      for (int k = 0; k < nfreq; ++k)
        acc = acc + amp[std::size_t(c)][std::size_t(2 * k)] * sin(freq[std::size_t(k)] * s) +
              amp[std::size_t(c)][std::size_t(2 * k + 1)] * cos(freq[std::size_t(k)] * s);
      out[std::size_t(c)] = acc;
    }
    return out;
  });
}

}  // namespace sympcurve::testing
