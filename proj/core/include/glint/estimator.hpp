#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "glint/integrand.hpp"
#include "glint/lattice.hpp"
#include "glint/params.hpp"
#include "glint/rng.hpp"
#include "glint/window.hpp"

namespace glint {

/// Addresses every random decision of one estimate: master seed, run index,
/// repetition index. Same key => same draws, jitter, and result.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t run = 0;
  std::uint64_t rep = 0;
};

/// Stream for one (seed, run, rep) repetition; domains hang off it.
RngStream rep_stream(const StreamKey& key);

struct Estimate {
  std::complex<double> value{0.0, 0.0};
  std::int64_t evaluations = 0;
  bool aborted = false;
  StreamKey key{};
};

struct EstimatorOptions {
  bool jitter = true;
  /// Guarded-path evaluation cap; negative means the default 200L+100.
  std::int64_t guard_threshold = -1;
  /// Max integer shifts admitted per axis when periodizing.
  std::int64_t shift_cap_per_axis = 4096;
};

/// Single-shot filter estimate: draws H, z (and jitter) from the key and
/// returns sum_{|l|<=L} f(point_l) * weight(l), exactly 2L+1 evaluations,
/// compensated complex accumulation. Throws EvaluationError on non-finite
/// integrand values.
Estimate estimate_once(const Integrand& f, const Params& p, const Window& w,
                       const StreamKey& key, const EstimatorOptions& opt = {});

/// Same sum for an explicit draw (used by enumeration oracles). Jitter, when
/// enabled, still comes from the key's streams.
Estimate estimate_with_draw(const Integrand& f, const Params& p, const Window& w,
                            const LatticeDraw& draw, const StreamKey& key,
                            const EstimatorOptions& opt = {});

/// Componentwise median: median of real parts + i * median of imaginary
/// parts. Rejects even-length input.
std::complex<double> complex_median(std::span<const std::complex<double>> values);

/// t independent single shots (fresh H, z, jitter per repetition, rep index
/// key.rep + j), combined by complex_median. evaluations = t*(2L+1).
Estimate median_estimate(const Integrand& f, const Params& p, const Window& w,
                         const StreamKey& key, const EstimatorOptions& opt = {});

/// Periodization F(x) = sum_k f(k+x) over the integer shifts admitted by the
/// support box, membership-filtered. Rejects integrands without a support
/// spec and boxes exceeding the per-axis shift cap.
Integrand periodize(const Integrand& f, std::int64_t shift_cap_per_axis = 4096);

/// Guarded estimate for compactly supported f: enumerates the candidate
/// sets V_l = {k : k + point_l in support} for all |l| <= L without touching
/// f; if sum_l #V_l exceeds 200L+100 (or opt.guard_threshold) returns 0 with
/// aborted = true and zero evaluations, otherwise evaluates the filter sum
/// of the periodization over exactly those candidates.
Estimate guarded_estimate(const Integrand& f, const Params& p, const Window& w,
                          const StreamKey& key, const EstimatorOptions& opt = {});

/// Plain random lattice rule baseline: (1/M) sum_{0<=l<M} f at the jittered
/// node (z - l*H)/M. Rejects composite M.
std::complex<double> plain_lattice_estimate(const Integrand& f, std::int64_t M, int d,
                                            const StreamKey& key, bool jitter = true);

/// Plain lattice sum for an explicit draw (enumeration tests).
std::complex<double> plain_lattice_with_draw(const Integrand& f, std::int64_t M, int d,
                                             const LatticeDraw& draw, const StreamKey& key,
                                             bool jitter = true);

/// Standard Monte Carlo baseline: mean of f over M iid uniform points.
std::complex<double> monte_carlo_estimate(const Integrand& f, std::int64_t M, int d,
                                          const StreamKey& key);

}  // namespace glint
