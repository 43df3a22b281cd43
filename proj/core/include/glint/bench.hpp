#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "glint/integrand.hpp"
#include "glint/params.hpp"

namespace glint {

/// One median estimate with full provenance; CSV row format below.
struct EstimateRecord {
  std::string function;
  int d = 0;
  std::int64_t N = 0;
  int k = 0;
  std::int64_t L = 0;
  double r = 0.0;
  std::int64_t M = 0;  // sample size 2L+1 (repetitions excluded)
  int t = 0;
  int run = 0;
  double estimate_re = 0.0;
  double estimate_im = 0.0;
  double sq_error = 0.0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
};

inline constexpr const char* kCsvHeader =
    "function,d,N,k,L,r,M,t,run,estimate_re,estimate_im,sq_error,seed,wall_ms";

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int points = 0;
  int k_min = 0;
  int k_max = 0;
};

using RecordSink = std::function<void(const EstimateRecord&)>;

/// Run the full plan: for each k in range and each run, one median estimate
/// with squared error against the stored exact integral. Deterministic given
/// the plan seed; (k, run) work items may execute on `threads` workers
/// (0 = hardware concurrency). The sink, if given, sees each record as it
/// completes (serialized), so partial results survive a failing integrand.
/// Output is sorted by (k, run).
std::vector<EstimateRecord> run_experiment(const ExperimentPlan& plan, int threads = 0,
                                           const RecordSink& sink = nullptr);

/// Same runner with an explicit integrand (the plan's function name is kept
/// for labeling only). The integrand must carry an exact integral.
std::vector<EstimateRecord> run_experiment_with(const ExperimentPlan& plan,
                                                const Integrand& f, int threads = 0,
                                                const RecordSink& sink = nullptr);

enum class BaselineKind { kMonteCarlo, kPlainLattice };

/// Baseline curves on the same x-axis: for each k, M = 2^k samples of plain
/// Monte Carlo (or the random lattice rule with M = next_prime(2^k)).
std::vector<EstimateRecord> run_baseline(BaselineKind kind, const std::string& function,
                                         int d, int k_min, int k_max, int runs,
                                         std::uint64_t seed, int threads = 0,
                                         const RecordSink& sink = nullptr);

/// OLS on (log2 M, log2 mean sq_error), one point per k averaged over runs.
/// Rejects fewer than 3 distinct k or a zero mean error.
SlopeFit fit_slope(std::span<const EstimateRecord> records);

void write_csv(std::span<const EstimateRecord> records, const std::filesystem::path& path);
std::vector<EstimateRecord> read_csv(const std::filesystem::path& path);

/// Serialize one record as a CSV row (doubles round-trip exactly).
std::string csv_row(const EstimateRecord& rec);

/// Plan JSON: fields function, d, N, k_min, k_max, c, t, runs, seed.
ExperimentPlan plan_from_json_file(const std::filesystem::path& path);
std::string plan_to_json(const ExperimentPlan& plan);

/// Summary JSON: resolved plan, slope fit, library version.
void write_summary_json(const ExperimentPlan& plan, const SlopeFit& fit,
                        const std::filesystem::path& path);

}  // namespace glint
