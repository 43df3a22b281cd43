#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace glint {

/// Truncated periodic Gaussian filter weights on node indices |l| <= L.
///
/// The profile is (1/(r*sqrt(2*pi))) * exp(-(l+kN)^2 / (2r^2)) summed over
/// the k with |l+kN| <= L; with 2L < N (enforced) only k = 0 survives.
/// Stored weights are scaled to unit sum so the filter reproduces constants
/// exactly; raw_mass() keeps the unnormalized Gaussian sum for diagnostics
/// (it differs from 1 by a Theta(eps_window) truncation deficit).
///
/// Immutable after construction; safe to share across threads.
class Window {
 public:
  /// Rejects 2L >= N or r <= 0.
  static Window build(std::int64_t L, double r, std::int64_t N);

  std::int64_t half_width() const { return L_; }
  double scale() const { return r_; }
  std::int64_t modulus() const { return N_; }

  /// Normalized weight at node index l, |l| <= L.
  double weight(std::int64_t l) const { return weights_[static_cast<std::size_t>(l + L_)]; }

  /// All 2L+1 weights, indexed by l + L.
  std::span<const double> weights() const { return weights_; }

  /// Compensated sum of the stored weights (~1 up to rounding).
  double mass() const;

  /// Unnormalized Gaussian sum sum_{|l|<=L} (1/(r*sqrt(2pi))) e^{-l^2/2r^2}.
  double raw_mass() const { return raw_mass_; }

  /// sum_l weight(l) * exp(2*pi*i*freq*l/N). Exact integer phase reduction
  /// mod N, so the response is N-periodic in freq bit-for-bit.
  std::complex<double> band_response(std::int64_t freq) const;

  /// The k = 0 profile term (1/(r*sqrt(2*pi))) * exp(-l^2/(2r^2)).
  static double gaussian_term(std::int64_t l, double r);

 private:
  Window(std::int64_t L, double r, std::int64_t N, std::vector<double> w, double raw)
      : L_(L), r_(r), N_(N), weights_(std::move(w)), raw_mass_(raw) {}

  std::int64_t L_;
  double r_;
  std::int64_t N_;
  std::vector<double> weights_;
  double raw_mass_;
};

}  // namespace glint
