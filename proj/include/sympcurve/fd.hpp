#pragma once

// Finite-difference weights on arbitrary nodes (Fornberg's recurrence).

#include <vector>

namespace sympcurve::detail {

// Weights w[k][i] so that f^(k)(x0) ~= sum_i w[k][i] f(x[i]), for k = 0..m.
inline std::vector<std::vector<double>> fd_weights(double x0,
                                                   const std::vector<double>& x,
                                                   int m) {
  int n = int(x.size()) - 1;
  std::vector<std::vector<double>> w(std::size_t(m) + 1,
                                     std::vector<double>(x.size(), 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  w[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    int mn = std::min(i, m);
    double c2 = 1.0;
    double c5 = c4;
    c4 = x[std::size_t(i)] - x0;
    for (int j = 0; j < i; ++j) {
      double c3 = x[std::size_t(i)] - x[std::size_t(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          w[std::size_t(k)][std::size_t(i)] =
              c1 * (k * w[std::size_t(k) - 1][std::size_t(i) - 1] -
                    c5 * w[std::size_t(k)][std::size_t(i) - 1]) / c2;
        w[0][std::size_t(i)] = -c1 * c5 * w[0][std::size_t(i) - 1] / c2;
      }
      for (int k = mn; k >= 1; --k)
        w[std::size_t(k)][std::size_t(j)] =
            (c4 * w[std::size_t(k)][std::size_t(j)] -
             k * w[std::size_t(k) - 1][std::size_t(j)]) / c3;
      w[0][std::size_t(j)] = c4 * w[0][std::size_t(j)] / c3;
    }
    c1 = c2;
  }
  return w;
}

}  // namespace sympcurve::detail
