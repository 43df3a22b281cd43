#include "glint/window.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

#include "glint/accum.hpp"
#include "glint/error.hpp"

namespace glint {

double Window::gaussian_term(std::int64_t l, double r) {
  const double x = static_cast<double>(l) / r;
  return std::exp(-x * x / 2.0) / (r * std::sqrt(2.0 * std::numbers::pi));
}

Window Window::build(std::int64_t L, double r, std::int64_t N) {
  if (L < 1) throw ValidationError("window: L must be >= 1");
  if (!(r > 0.0)) throw ValidationError("window: r must be positive");
  if (!(2 * L < N)) throw ValidationError("window: need 2L < N");

  const std::size_t n = static_cast<std::size_t>(2 * L + 1);
  std::vector<double> w(n);
  // 2L < N means |l + kN| > L for every k != 0, so the periodic sum
  // reduces to its k = 0 term for each stored index.
  assert(L + N > 2 * L && N - L > L);
  for (std::int64_t l = 0; l <= L; ++l) {
    const double g = gaussian_term(l, r);
    w[static_cast<std::size_t>(L + l)] = g;
    w[static_cast<std::size_t>(L - l)] = g;  // same double: symmetry is bitwise
  }

  KahanSum raw;
  for (double x : w) raw.add(x);
  const double raw_mass = raw.value();

  // Unit-sum scaling: the filter then reproduces constants exactly and the
  // truncation deficit (a Theta(eps_window) effect) stays out of the
  // frequency-zero path. raw_mass keeps the deficit observable.
  for (double& x : w) x /= raw_mass;

  return Window(L, r, N, std::move(w), raw_mass);
}

double Window::mass() const {
  KahanSum s;
  for (double x : weights_) s.add(x);
  return s.value();
}

std::complex<double> Window::band_response(std::int64_t freq) const {
  KahanComplexSum acc;
  const double inv_n = 1.0 / static_cast<double>(N_);
  for (std::int64_t l = -L_; l <= L_; ++l) {
    // Exact residue of freq*l mod N keeps the phase faithful for any freq
    // and makes the response N-periodic bit-for-bit.
    __int128 p = static_cast<__int128>(freq) * l % N_;
    if (p < 0) p += N_;
    const double angle = 2.0 * std::numbers::pi * (static_cast<double>(static_cast<std::int64_t>(p)) * inv_n);
    const double g = weight(l);
    acc.add({g * std::cos(angle), g * std::sin(angle)});
  }
  return acc.value();
}

}  // namespace glint
