#pragma once

// Test-only helpers: independent quadrature and trial-division oracles.
// These stay deliberately separate from the library code they check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace testsupport {

// Gauss-Legendre nodes/weights on [0,1], Newton iteration on P_n.
inline std::vector<std::pair<double, double>> gauss_legendre_01(int n) {
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));  // Chebyshev initial guess
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out.emplace_back(0.5 * (x + 1.0), 0.5 * w);  // map [-1,1] -> [0,1]
  }
  return out;
}

// High-order quadrature of f over [0,1].
inline double integrate_01(const std::function<double(double)>& f, int order = 48) {
  double s = 0.0;
  for (const auto& [x, w] : gauss_legendre_01(order)) s += w * f(x);
  return s;
}

// Quadrature split at 1/2, for integrands with a kink there.
inline double integrate_01_split(const std::function<double(double)>& f, int order = 48) {
  double s = 0.0;
  for (const auto& [x, w] : gauss_legendre_01(order)) {
    s += 0.5 * w * (f(0.5 * x) + f(0.5 + 0.5 * x));
  }
  return s;
}

// Independent primality oracle: 6k+-1 trial division.
inline bool trial_division_is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::int64_t p = 5; p <= n / p; p += 6) {
    if (n % p == 0 || n % (p + 2) == 0) return false;
  }
  return true;
}

}  // namespace testsupport
