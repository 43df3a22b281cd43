#include "glint/params.hpp"

#include <cmath>
#include <string>

#include "glint/error.hpp"
#include "glint/primes.hpp"

namespace glint {

double Params::eps_window() const {
  const double ratio = static_cast<double>(L) / r;
  return std::exp(-ratio * ratio / 2.0);
}

double Params::implied_band() const {
  // r = B * sqrt(log(1/eps)) with log(1/eps) = (L/r)^2 / 2.
  return r / std::sqrt((static_cast<double>(L) / r) * (static_cast<double>(L) / r) / 2.0);
}

Params make_params(int d, std::int64_t N, std::int64_t L, double r, int t,
                   std::uint64_t seed) {
  if (d < 1) throw ValidationError("params: d must be >= 1");
  if (N < 3) throw ValidationError("params: N must be >= 3");
  if (!is_prime(N)) throw ValidationError("params: N = " + std::to_string(N) + " is not prime");
  if (!(r > 1.0)) throw ValidationError("params: need r > 1");
  if (!(static_cast<double>(L) > r)) throw ValidationError("params: need r < L");
  if (!(2 * L < N)) throw ValidationError("params: need 2L < N");
  if (t < 1 || t % 2 == 0) throw ValidationError("params: t must be an odd positive integer");
  return Params{d, N, L, r, t, seed};
}

Params params_for_k(const ExperimentPlan& plan, int k) {
  const std::int64_t L = std::int64_t{1} << k;
  return make_params(plan.d, plan.N, L, plan.c * static_cast<double>(L), plan.t, plan.seed);
}

void validate_plan(const ExperimentPlan& plan) {
  if (plan.k_min > plan.k_max) throw ValidationError("plan: k_min > k_max");
  if (plan.k_max >= 62) throw ValidationError("plan: k_max too large");
  if (plan.runs < 1) throw ValidationError("plan: runs must be >= 1");
  if (plan.function.empty()) throw ValidationError("plan: empty function name");
  for (int k = plan.k_min; k <= plan.k_max; ++k) {
    (void)params_for_k(plan, k);  // throws with the offending k's message
  }
}

}  // namespace glint
