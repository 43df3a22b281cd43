#include "glint/oracle.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "glint/error.hpp"

namespace glint::oracle {
namespace {

using ld = long double;
using cld = std::complex<long double>;

constexpr ld kPi = std::numbers::pi_v<long double>;

std::int64_t checked_pow(std::int64_t base, int exp, const char* what) {
  std::int64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > kCaseCap / base) throw ValidationError(std::string(what) + ": beyond the case cap");
    v *= base;
  }
  return v;
}

// Locally built unnormalized Gaussian profile for |l| <= L (k = 0 term;
// callers enforce 2L < N).
std::vector<ld> raw_profile(std::int64_t L, ld r) {
  std::vector<ld> g(static_cast<std::size_t>(2 * L + 1));
  for (std::int64_t l = -L; l <= L; ++l) {
    const ld x = static_cast<ld>(l) / r;
    g[static_cast<std::size_t>(l + L)] = std::exp(-x * x / 2.0L) / (r * std::sqrt(2.0L * kPi));
  }
  return g;
}

std::vector<ld> unit_profile(std::int64_t L, ld r) {
  auto g = raw_profile(L, r);
  ld s = 0.0L;
  for (ld v : g) s += v;
  for (ld& v : g) v /= s;
  return g;
}

std::vector<cld> roots_of_unity(std::int64_t N) {
  std::vector<cld> roots(static_cast<std::size_t>(N));
  for (std::int64_t j = 0; j < N; ++j) {
    const ld a = 2.0L * kPi * static_cast<ld>(j) / static_cast<ld>(N);
    roots[static_cast<std::size_t>(j)] = {std::cos(a), std::sin(a)};
  }
  return roots;
}

// Odometer over [base)^d; returns false when the space is exhausted.
bool advance(std::vector<std::int64_t>& v, std::int64_t lo, std::int64_t hi) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (++v[i] < hi) return true;
    v[i] = lo;
  }
  return false;
}

}  // namespace

std::complex<double> dft_coefficient(const Integrand& f, std::span<const std::int64_t> w,
                                     std::int64_t N, int d) {
  if (static_cast<int>(w.size()) != d) throw ValidationError("dft: frequency dimension mismatch");
  const std::int64_t cases = checked_pow(N, d, "dft");
  const auto roots = roots_of_unity(N);

  std::vector<std::int64_t> m(static_cast<std::size_t>(d), 0);
  std::vector<double> x(static_cast<std::size_t>(d));
  cld acc{0.0L, 0.0L};
  std::int64_t visited = 0;
  do {
    std::int64_t phase = 0;
    for (int i = 0; i < d; ++i) {
      const std::size_t ii = static_cast<std::size_t>(i);
      x[ii] = static_cast<double>(m[ii]) / static_cast<double>(N);
      phase = (phase + (w[ii] % N + N) % N * m[ii]) % N;
    }
    const std::complex<double> fv = f(x);
    // exp(-2 pi i w.m / N) = conj(root[w.m mod N])
    acc += cld(fv.real(), fv.imag()) * std::conj(roots[static_cast<std::size_t>(phase)]);
    ++visited;
  } while (advance(m, 0, N));
  (void)cases;
  acc /= static_cast<ld>(visited);
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

double dispersion_probability(std::span<const std::int64_t> w, std::int64_t N, double B,
                              int d) {
  if (static_cast<int>(w.size()) != d) {
    throw ValidationError("dispersion: frequency dimension mismatch");
  }
  if (!(B > 0.0)) throw ValidationError("dispersion: B must be positive");
  bool all_zero = true;
  for (std::int64_t wi : w) {
    if ((wi % N + N) % N != 0) all_zero = false;
  }
  if (all_zero) throw ValidationError("dispersion: w must be nonzero mod N");
  checked_pow(N - 1, d, "dispersion");

  const double band = static_cast<double>(N) / B;
  std::vector<std::int64_t> h(static_cast<std::size_t>(d), 1);
  std::int64_t in_band = 0, total = 0;
  do {
    std::int64_t dot = 0;
    for (int i = 0; i < d; ++i) {
      const std::size_t ii = static_cast<std::size_t>(i);
      dot = (dot + (w[ii] % N + N) % N * h[ii]) % N;
    }
    const std::int64_t sym = std::min(dot, N - dot);  // distance to 0 mod N
    if (static_cast<double>(sym) <= band) ++in_band;
    ++total;
  } while (advance(h, 1, N));
  return static_cast<double>(in_band) / static_cast<double>(total);
}

MomentStats exhaustive_estimator_stats(const Integrand& f, std::int64_t N, int d,
                                       std::int64_t L, double r) {
  if (!(2 * L < N)) throw ValidationError("estimator stats: need 2L < N");
  const std::int64_t hz_cases =
      checked_pow(N - 1, d, "estimator stats") * checked_pow(N, d, "estimator stats");
  if (hz_cases > kCaseCap) throw ValidationError("estimator stats: beyond the case cap");

  const auto g = unit_profile(L, static_cast<ld>(r));
  // Cache f on the full grid (N^d points, indexed by mixed radix).
  const std::int64_t grid = checked_pow(N, d, "estimator stats");
  std::vector<std::complex<double>> fgrid(static_cast<std::size_t>(grid));
  {
    std::vector<std::int64_t> m(static_cast<std::size_t>(d), 0);
    std::vector<double> x(static_cast<std::size_t>(d));
    std::int64_t flat = 0;
    do {
      for (int i = 0; i < d; ++i) {
        x[static_cast<std::size_t>(i)] =
            static_cast<double>(m[static_cast<std::size_t>(i)]) / static_cast<double>(N);
      }
      fgrid[static_cast<std::size_t>(flat++)] = f(x);
    } while (advance(m, 0, N));
  }

  cld mean{0.0L, 0.0L};
  ld second = 0.0L;
  std::int64_t draws = 0;
  std::vector<std::int64_t> h(static_cast<std::size_t>(d), 1);
  do {
    std::vector<std::int64_t> z(static_cast<std::size_t>(d), 0);
    do {
      cld est{0.0L, 0.0L};
      for (std::int64_t l = -L; l <= L; ++l) {
        std::int64_t flat = 0;
        for (int i = d - 1; i >= 0; --i) {
          const std::size_t ii = static_cast<std::size_t>(i);
          std::int64_t mi = (z[ii] - l % N * h[ii]) % N;
          if (mi < 0) mi += N;
          flat = flat * N + mi;
        }
        const std::complex<double> fv = fgrid[static_cast<std::size_t>(flat)];
        est += cld(fv.real(), fv.imag()) * g[static_cast<std::size_t>(l + L)];
      }
      mean += est;
      second += est.real() * est.real() + est.imag() * est.imag();
      ++draws;
    } while (advance(z, 0, N));
  } while (advance(h, 1, N));

  mean /= static_cast<ld>(draws);
  second /= static_cast<ld>(draws);
  MomentStats out;
  out.mean = {static_cast<double>(mean.real()), static_cast<double>(mean.imag())};
  out.second_moment = static_cast<double>(second);
  out.variance = static_cast<double>(second - (mean.real() * mean.real() + mean.imag() * mean.imag()));
  return out;
}

double window_truncation_gap(std::int64_t L, double r, std::int64_t N) {
  if (!(2 * L < N)) throw ValidationError("truncation gap: need 2L < N");
  const ld rr = static_cast<ld>(r);
  const ld peak = 1.0L / (rr * std::sqrt(2.0L * kPi));
  ld gap = 0.0L;
  for (std::int64_t l = -L; l <= L; ++l) {
    // Truncated: only |l + kN| <= L contributes; with 2L < N that is k = 0.
    const ld x = static_cast<ld>(l) / rr;
    const ld truncated = peak * std::exp(-x * x / 2.0L);
    // Untruncated periodic sum over k until the tail is negligible.
    ld full = 0.0L;
    for (std::int64_t k = 0;; ++k) {
      const ld xp = (static_cast<ld>(l) + static_cast<ld>(k) * static_cast<ld>(N)) / rr;
      const ld xm = (static_cast<ld>(l) - static_cast<ld>(k) * static_cast<ld>(N)) / rr;
      ld term = peak * std::exp(-xp * xp / 2.0L);
      if (k > 0) term += peak * std::exp(-xm * xm / 2.0L);
      full += term;
      if (k > 0 && term < 1e-16L * peak) break;
    }
    gap = std::max(gap, std::abs(truncated - full));
  }
  return static_cast<double>(gap);
}

double max_band_response_beyond(std::int64_t N, std::int64_t L, double r, std::int64_t dist) {
  if (!(2 * L < N)) throw ValidationError("band response: need 2L < N");
  if (N * (2 * L + 1) > kCaseCap) throw ValidationError("band response: beyond the case cap");
  const auto g = unit_profile(L, static_cast<ld>(r));
  const auto roots = roots_of_unity(N);
  ld worst = 0.0L;
  for (std::int64_t w = 0; w < N; ++w) {
    if (std::min(w, N - w) <= dist) continue;
    cld s{0.0L, 0.0L};
    for (std::int64_t l = -L; l <= L; ++l) {
      const std::int64_t ph = ((w * l) % N + N) % N;
      s += g[static_cast<std::size_t>(l + L)] * roots[static_cast<std::size_t>(ph)];
    }
    worst = std::max(worst, std::abs(s));
  }
  return static_cast<double>(worst);
}

double orthogonality_defect(std::int64_t N, int d, std::int64_t L, double r) {
  if (!(2 * L < N)) throw ValidationError("orthogonality: need 2L < N");
  const std::int64_t grid = checked_pow(N, d, "orthogonality");
  const std::int64_t hspace = checked_pow(N - 1, d, "orthogonality");
  if (hspace * grid > kCaseCap) throw ValidationError("orthogonality: beyond the case cap");

  const auto g = unit_profile(L, static_cast<ld>(r));
  const auto roots = roots_of_unity(N);
  const std::size_t gn = static_cast<std::size_t>(grid);

  // Frequency list = all xi in Z_N^d, mixed-radix order.
  std::vector<std::vector<std::int64_t>> freqs;
  freqs.reserve(gn);
  {
    std::vector<std::int64_t> xi(static_cast<std::size_t>(d), 0);
    do {
      freqs.push_back(xi);
    } while (advance(xi, 0, N));
  }

  ld worst = 0.0L;
  std::vector<std::int64_t> h(static_cast<std::size_t>(d), 1);
  std::vector<cld> S(gn * gn);
  do {
    // S[xi][z] = sum_l G_l e(xi . (z - lH) / N); phases reduce mod N exactly.
    for (std::size_t fi = 0; fi < gn; ++fi) {
      const auto& xi = freqs[fi];
      std::int64_t xih = 0;  // xi . H mod N
      for (int i = 0; i < d; ++i) {
        xih = (xih + xi[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)]) % N;
      }
      // Dependence on z enters through xi . z mod N only.
      std::vector<cld> by_phase(static_cast<std::size_t>(N));
      for (std::int64_t zp = 0; zp < N; ++zp) {
        cld s{0.0L, 0.0L};
        for (std::int64_t l = -L; l <= L; ++l) {
          std::int64_t ph = (zp - l % N * xih) % N;
          if (ph < 0) ph += N;
          s += g[static_cast<std::size_t>(l + L)] * roots[static_cast<std::size_t>(ph)];
        }
        by_phase[static_cast<std::size_t>(zp)] = s;
      }
      std::vector<std::int64_t> z(static_cast<std::size_t>(d), 0);
      std::size_t zi = 0;
      do {
        std::int64_t zp = 0;
        for (int i = 0; i < d; ++i) {
          zp = (zp + xi[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)]) % N;
        }
        S[fi * gn + zi] = by_phase[static_cast<std::size_t>(zp)];
        ++zi;
      } while (advance(z, 0, N));
    }
    for (std::size_t a = 0; a < gn; ++a) {
      for (std::size_t b = a + 1; b < gn; ++b) {
        cld dot{0.0L, 0.0L};
        for (std::size_t zi = 0; zi < gn; ++zi) {
          dot += S[a * gn + zi] * std::conj(S[b * gn + zi]);
        }
        worst = std::max(worst, std::abs(dot));
      }
    }
  } while (advance(h, 1, N));
  return static_cast<double>(worst / static_cast<ld>(grid));
}

double binomial_majority_tail(int k, double alpha) {
  if (k < 1 || k % 2 == 0) throw ValidationError("binomial tail: k must be odd positive");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("binomial tail: alpha in [0,1]");
  const int lo = (k + 1) / 2;
  ld total = 0.0L;
  for (int j = lo; j <= k; ++j) {
    // C(k, j) via the multiplicative formula, exact in long double for k <= 63.
    ld c = 1.0L;
    for (int i = 1; i <= j; ++i) {
      c = c * static_cast<ld>(k - j + i) / static_cast<ld>(i);
    }
    total += c * std::pow(static_cast<ld>(alpha), j) *
             std::pow(1.0L - static_cast<ld>(alpha), k - j);
  }
  return static_cast<double>(total);
}

double median_fail_bound(int k, double alpha) {
  return std::pow(2.0, k) * std::pow(alpha, static_cast<double>(k) / 2.0);
}

}  // namespace glint::oracle
