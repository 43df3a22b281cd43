// Command-line front end: benchmark runner, one-off integration, window and
// oracle diagnostics, prime search.
//
// Exit codes: 0 success, 2 validation error, 3 threshold failure in --check.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "glint/bench.hpp"
#include "glint/error.hpp"
#include "glint/estimator.hpp"
#include "glint/integrand.hpp"
#include "glint/oracle.hpp"
#include "glint/params.hpp"
#include "glint/primes.hpp"
#include "glint/version.hpp"
#include "glint/window.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitThreshold = 3;

int cmd_benchmark(const std::string& plan_path, const std::string& out_dir,
                  const std::string& baseline, int threads, bool check, double max_slope,
                  double min_r2) {
  namespace fs = std::filesystem;
  const auto plan = glint::plan_from_json_file(plan_path);

  fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  fs::create_directories(dir);
  const fs::path csv_path = dir / "records.csv";
  const fs::path json_path = dir / "summary.json";

  std::ofstream csv(csv_path);
  if (!csv) throw glint::EvaluationError("cannot open " + csv_path.string());
  csv << glint::kCsvHeader << '\n';
  auto sink = [&csv](const glint::EstimateRecord& rec) {
    csv << glint::csv_row(rec) << '\n';
    csv.flush();  // partial results survive a failing run
  };

  std::vector<glint::EstimateRecord> records;
  if (baseline.empty()) {
    records = glint::run_experiment(plan, threads, sink);
  } else {
    const auto kind = baseline == "mc" ? glint::BaselineKind::kMonteCarlo
                                       : glint::BaselineKind::kPlainLattice;
    records = glint::run_baseline(kind, plan.function, plan.d, plan.k_min, plan.k_max,
                                  plan.runs, plan.seed, threads, sink);
  }
  // Rewrite sorted by (k, run); the streaming copy above is completion-ordered.
  glint::write_csv(records, csv_path);

  const auto fit = glint::fit_slope(records);
  glint::write_summary_json(plan, fit, json_path);
  std::cout << "records: " << records.size() << " -> " << csv_path.string() << "\n"
            << "slope: " << fit.slope << "  intercept: " << fit.intercept
            << "  R2: " << fit.r2 << "\n";

  if (check) {
    bool ok = true;
    if (fit.slope > max_slope) {
      std::cout << "CHECK FAIL: slope " << fit.slope << " > " << max_slope << "\n";
      ok = false;
    }
    if (fit.r2 < min_r2) {
      std::cout << "CHECK FAIL: R2 " << fit.r2 << " < " << min_r2 << "\n";
      ok = false;
    }
    if (!ok) return kExitThreshold;
    std::cout << "CHECK OK\n";
  }
  return 0;
}

int cmd_integrate(const std::string& fname, int d, std::int64_t N, std::int64_t L, double r,
                  int t, std::uint64_t seed, bool no_jitter) {
  const auto p = glint::make_params(d, N, L, r, t, seed);
  const auto f = glint::parse_integrand(fname, d);
  if (!f.periodic) {
    std::cerr << "note: '" << fname
              << "' is not periodic across the torus seam; high-order rates need a"
                 " periodization (e.g. the tent-transformed variant)\n";
  }
  const auto w = glint::Window::build(p.L, p.r, p.N);
  glint::EstimatorOptions opt;
  opt.jitter = !no_jitter;
  const auto e = glint::median_estimate(f, p, w, glint::StreamKey{seed, 0, 0}, opt);
  std::cout << "estimate: " << e.value.real();
  if (e.value.imag() != 0.0) std::cout << " + " << e.value.imag() << "i";
  std::cout << "\nevaluations: " << e.evaluations << "  (M = " << 2 * p.L + 1
            << ", t = " << p.t << ")\n";
  if (f.exact_integral) {
    std::cout << "exact: " << f.exact_integral->real()
              << "  sq_error: " << std::norm(e.value - *f.exact_integral) << "\n";
  }
  return 0;
}

int cmd_verify_window(std::int64_t L, double r, std::int64_t N) {
  const auto w = glint::Window::build(L, r, N);
  std::cout << "L = " << L << "  r = " << r << "  N = " << N << "\n"
            << "mass (stored weights):    " << w.mass() << "\n"
            << "raw gaussian sum:         " << w.raw_mass() << "\n"
            << "|1 - raw sum|:            " << std::abs(1.0 - w.raw_mass()) << "\n"
            << "eps_window:               " << std::exp(-(double(L) / r) * (double(L) / r) / 2)
            << "\n";
  for (std::int64_t freq : {std::int64_t{0}, std::int64_t{1}, N / 4, N / 2}) {
    std::cout << "band_response(" << freq << ") = " << std::abs(w.band_response(freq)) << "\n";
  }
  return 0;
}

int cmd_oracle() {
  using namespace glint;
  int failures = 0;
  auto report = [&](const char* name, bool ok, double value) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "  (" << value << ")\n";
    if (!ok) ++failures;
  };

  {  // character orthogonality of the zero frequency
    const auto one = make_constant(1, {1.0, 0.0});
    const std::int64_t w0[] = {0};
    const auto c = oracle::dft_coefficient(one, w0, 11, 1);
    report("dft: constant at w=0 is 1", std::abs(c - std::complex<double>(1, 0)) < 1e-14,
           c.real());
  }
  {  // hash dispersion at N=101
    const std::int64_t w[] = {1};
    const double p = oracle::dispersion_probability(w, 101, 10.0, 1);
    report("dispersion: d=1 w=1 B=10 -> 0.2 <= 2.5/B", p == 0.2 && p <= 0.25, p);
  }
  {  // window truncation vs untruncated periodic profile
    const double gap = oracle::window_truncation_gap(20, 5.0, 101);
    report("truncation gap small at L=20 r=5 N=101", gap < 1e-4, gap);
  }
  {  // out-of-band rejection
    const double worst = oracle::max_band_response_beyond(101, 20, 5.0, 25);
    report("band response beyond N/4 at most 1e-3", worst <= 1e-3, worst);
  }
  {  // filtered character sums stay orthogonal
    const double defect = oracle::orthogonality_defect(7, 2, 2, 1.2);
    report("orthogonality defect below 1e-9", defect <= 1e-9, defect);
  }
  {  // median amplification bound
    bool ok = true;
    double worst_ratio = 0.0;
    for (int k = 3; k <= 15; k += 2) {
      for (int ai = 1; ai <= 7; ++ai) {
        const double alpha = 0.05 * ai;
        const double exact = oracle::binomial_majority_tail(k, alpha);
        const double bound = oracle::median_fail_bound(k, alpha);
        ok = ok && exact <= bound;
        worst_ratio = std::max(worst_ratio, exact / bound);
      }
    }
    report("median trick: exact tail within 2^k a^{k/2}", ok, worst_ratio);
  }
  std::cout << (failures == 0 ? "oracle suite: all checks passed\n"
                              : "oracle suite: FAILURES\n");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"filtered lattice integration toolkit"};
  app.set_version_flag("--version", glint::kVersion);
  app.require_subcommand(1);

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "run a convergence experiment from a JSON plan");
  std::string plan_path, out_dir, baseline;
  int threads = 0;
  bool check = false;
  double max_slope = 0.0, min_r2 = 0.0;
  bench->add_option("--plan", plan_path, "plan JSON file")->required();
  bench->add_option("--out", out_dir, "output directory (records.csv, summary.json)");
  bench->add_option("--baseline", baseline, "run a baseline instead: mc | lattice")
      ->check(CLI::IsMember({"mc", "lattice"}));
  bench->add_option("--threads", threads, "worker threads (0 = hardware)");
  bench->add_flag("--check", check, "exit 3 unless slope/R2 pass the thresholds");
  bench->add_option("--max-slope", max_slope, "check: fitted slope must be <= this");
  bench->add_option("--min-r2", min_r2, "check: R2 must be >= this");

  // integrate
  auto* integ = app.add_subcommand("integrate", "one median estimate of a named integrand");
  std::string fname = "f1";
  int d = 1, t = 1;
  std::int64_t N = 0, L = 0;
  double r = 0.0;
  std::uint64_t seed = 1;
  bool no_jitter = false;
  integ->add_option("--function", fname, "f1 | f2 | f3 | f3-tent | const:<v> | sparse:K=..,M=..,l1=..")
      ->required();
  integ->add_option("--dim", d, "dimension")->required();
  integ->add_option("--N", N, "prime modulus")->required();
  integ->add_option("--L", L, "filter half-width")->required();
  integ->add_option("--r", r, "window scale")->required();
  integ->add_option("--t", t, "odd repetition count")->required();
  integ->add_option("--seed", seed, "master seed");
  integ->add_flag("--no-jitter", no_jitter, "disable the per-node jitter");

  // verify-window
  auto* vw = app.add_subcommand("verify-window", "print window mass and band-response diagnostics");
  std::int64_t vw_L = 0, vw_N = 0;
  double vw_r = 0.0;
  vw->add_option("--L", vw_L)->required();
  vw->add_option("--r", vw_r)->required();
  vw->add_option("--N", vw_N)->required();

  // oracle
  auto* orc = app.add_subcommand("oracle", "run the brute-force oracle suite");

  // prime
  auto* pr = app.add_subcommand("prime", "primality utilities");
  std::int64_t next_of = -1;
  pr->add_option("--next", next_of, "print the smallest prime >= X")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (bench->parsed()) {
      return cmd_benchmark(plan_path, out_dir, baseline, threads, check, max_slope, min_r2);
    }
    if (integ->parsed()) return cmd_integrate(fname, d, N, L, r, t, seed, no_jitter);
    if (vw->parsed()) return cmd_verify_window(vw_L, vw_r, vw_N);
    if (orc->parsed()) return cmd_oracle();
    if (pr->parsed()) {
      std::cout << glint::next_prime(next_of) << "\n";
      return 0;
    }
  } catch (const glint::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
