#pragma once

#include <cstdint>
#include <string>

namespace glint {

/// Validated run parameters for the filtered lattice estimator.
///
/// N is the prime modulus, L the filter half-width (2L+1 nodes per shot),
/// r the Gaussian scale, t the odd repetition count for the median, d the
/// dimension. Construct through make_params(); instances are immutable in
/// spirit and always satisfy: N prime, 1 < r < L < N/2, t odd >= 1, d >= 1.
struct Params {
  int d = 1;
  std::int64_t N = 3;
  std::int64_t L = 1;
  double r = 1.0;
  int t = 1;
  std::uint64_t seed = 0;

  /// Window accuracy implied by the L = r*sqrt(2 log(1/eps)) relation.
  double eps_window() const;

  /// Diagnostic band parameter implied by r = B*sqrt(log(1/eps)); never
  /// consumed by the estimator.
  double implied_band() const;
};

/// Validate and build. Rejects non-prime N, even t, and ordering
/// violations (r <= 1, r >= L, 2L >= N).
Params make_params(int d, std::int64_t N, std::int64_t L, double r, int t,
                   std::uint64_t seed);

/// One convergence experiment: for k in [k_min, k_max], run the estimator
/// with L = 2^k, r = c * 2^k, `runs` independent medians of t repetitions.
struct ExperimentPlan {
  std::string function = "f1";
  int d = 1;
  std::int64_t N = 3;
  int k_min = 1;
  int k_max = 1;
  double c = 0.5;
  int t = 1;
  int runs = 1;
  std::uint64_t seed = 0;
};

/// Params for one k of the plan (L = 2^k, r = c * 2^k).
Params params_for_k(const ExperimentPlan& plan, int k);

/// Rejects plans where any k in range yields invalid Params.
void validate_plan(const ExperimentPlan& plan);

}  // namespace glint
