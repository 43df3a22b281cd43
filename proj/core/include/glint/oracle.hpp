#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "glint/integrand.hpp"

namespace glint::oracle {

/// Exhaustive loops refuse instances beyond this many cases.
inline constexpr std::int64_t kCaseCap = 10'000'000;

/// Everything here is brute force and deliberately independent of the
/// production window/lattice code: weights, node arithmetic, and phase
/// tables are recomputed locally so these functions can stand as oracles
/// against the estimator path.

/// (1/N^d) sum_{m in Z_N^d} f(m/N) exp(-2*pi*i w.m / N), exhaustive over
/// the full grid. Rejects N^d beyond the case cap.
std::complex<double> dft_coefficient(const Integrand& f, std::span<const std::int64_t> w,
                                     std::int64_t N, int d);

/// Exact probability over H uniform on [1,N)^d that H.w mod N lands in the
/// closed symmetric band [-N/B, N/B] (mod N), by full enumeration.
double dispersion_probability(std::span<const std::int64_t> w, std::int64_t N, double B,
                              int d);

struct MomentStats {
  std::complex<double> mean{0.0, 0.0};
  double second_moment = 0.0;  // E |X|^2
  double variance = 0.0;       // E |X|^2 - |E X|^2
};

/// First and second moments of the jitter-free filter estimate over all
/// (N-1)^d * N^d draws (H, z), with locally rebuilt normalized weights.
MomentStats exhaustive_estimator_stats(const Integrand& f, std::int64_t N, int d,
                                       std::int64_t L, double r);

/// max_l |truncated weight - untruncated periodic weight| where the
/// untruncated sum runs k until the neglected tail is below 1e-16 of the
/// peak. Long-double arithmetic, unnormalized profile.
double window_truncation_gap(std::int64_t L, double r, std::int64_t N);

/// Exhaustive max of |sum_l G_l exp(2 pi i w l / N)| (unit-sum weights,
/// rebuilt locally) over frequencies at circular distance > dist from 0.
double max_band_response_beyond(std::int64_t N, std::int64_t L, double r, std::int64_t dist);

/// Orthogonality defect of the filtered character sums: max over all H in
/// [1,N)^d and all distinct xi, eta in Z_N^d of
///   |sum_z S_xi(z) * conj(S_eta(z))| / N^d,
/// where S_xi(z) = sum_{|l|<=L} G_l exp(2*pi*i xi.(z-lH)/N) with unit-sum
/// weights. Zero in exact arithmetic for every distinct pair.
double orthogonality_defect(std::int64_t N, int d, std::int64_t L, double r);

/// P(Binomial(k, alpha) >= (k+1)/2), exact closed-form summation.
double binomial_majority_tail(int k, double alpha);

/// The amplification bound 2^k * alpha^{k/2}.
double median_fail_bound(int k, double alpha);

}  // namespace glint::oracle
