#include "glint/bench.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "glint/error.hpp"
#include "glint/estimator.hpp"
#include "glint/primes.hpp"
#include "glint/version.hpp"
#include "glint/window.hpp"

namespace glint {
namespace {

using json = nlohmann::json;

std::uint64_t run_tag(int k, int run) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(k)) << 32) |
         static_cast<std::uint32_t>(run);
}

std::string fmt_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, p);
}

double parse_double(std::string_view s, const char* what) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw ValidationError(std::string("csv: bad double in column ") + what);
  }
  return v;
}

template <typename T>
T parse_int(std::string_view s, const char* what) {
  T v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw ValidationError(std::string("csv: bad integer in column ") + what);
  }
  return v;
}

// Generic fan-out over `count` items with deterministic per-item work.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& work) {
  int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  n = static_cast<int>(std::min<std::int64_t>(n, count));
  if (n <= 1) {
    for (std::int64_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          work(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

std::vector<EstimateRecord> run_experiment(const ExperimentPlan& plan, int threads,
                                           const RecordSink& sink) {
  return run_experiment_with(plan, parse_integrand(plan.function, plan.d), threads, sink);
}

std::vector<EstimateRecord> run_experiment_with(const ExperimentPlan& plan, const Integrand& f,
                                                int threads, const RecordSink& sink) {
  validate_plan(plan);
  if (f.d != plan.d) throw ValidationError("benchmark: integrand dimension mismatch");
  if (!f.exact_integral) {
    throw ValidationError("benchmark: integrand has no exact integral for the error metric");
  }
  const std::complex<double> truth = *f.exact_integral;

  const int nk = plan.k_max - plan.k_min + 1;
  std::vector<Params> params;
  std::vector<Window> windows;
  params.reserve(static_cast<std::size_t>(nk));
  windows.reserve(static_cast<std::size_t>(nk));
  for (int k = plan.k_min; k <= plan.k_max; ++k) {
    params.push_back(params_for_k(plan, k));
    windows.push_back(Window::build(params.back().L, params.back().r, params.back().N));
  }

  std::vector<EstimateRecord> records;
  std::mutex mu;
  const std::int64_t items = static_cast<std::int64_t>(nk) * plan.runs;
  parallel_for(items, threads, [&](std::int64_t i) {
    const int ki = static_cast<int>(i / plan.runs);
    const int run = static_cast<int>(i % plan.runs);
    const int k = plan.k_min + ki;
    const Params& p = params[static_cast<std::size_t>(ki)];
    const Window& w = windows[static_cast<std::size_t>(ki)];

    const auto t0 = std::chrono::steady_clock::now();
    const StreamKey key{plan.seed, run_tag(k, run), 0};
    const Estimate e = median_estimate(f, p, w, key);
    const auto t1 = std::chrono::steady_clock::now();

    EstimateRecord rec;
    rec.function = plan.function;
    rec.d = plan.d;
    rec.N = plan.N;
    rec.k = k;
    rec.L = p.L;
    rec.r = p.r;
    rec.M = 2 * p.L + 1;  // repetitions t stay out of the sample count
    rec.t = p.t;
    rec.run = run;
    rec.estimate_re = e.value.real();
    rec.estimate_im = e.value.imag();
    rec.sq_error = std::norm(e.value - truth);
    rec.seed = plan.seed;
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    std::lock_guard<std::mutex> lock(mu);
    if (sink) sink(rec);
    records.push_back(std::move(rec));
  });

  std::sort(records.begin(), records.end(), [](const EstimateRecord& a, const EstimateRecord& b) {
    return a.k != b.k ? a.k < b.k : a.run < b.run;
  });
  return records;
}

std::vector<EstimateRecord> run_baseline(BaselineKind kind, const std::string& function,
                                         int d, int k_min, int k_max, int runs,
                                         std::uint64_t seed, int threads,
                                         const RecordSink& sink) {
  if (k_min > k_max || k_max >= 62) throw ValidationError("baseline: bad k range");
  if (runs < 1) throw ValidationError("baseline: runs must be >= 1");
  const Integrand f = parse_integrand(function, d);
  if (!f.exact_integral) {
    throw ValidationError("baseline: integrand has no exact integral for the error metric");
  }
  const std::complex<double> truth = *f.exact_integral;
  const bool mc = kind == BaselineKind::kMonteCarlo;
  const std::string label = (mc ? "mc:" : "lattice:") + function;

  const int nk = k_max - k_min + 1;
  std::vector<EstimateRecord> records;
  std::mutex mu;
  parallel_for(static_cast<std::int64_t>(nk) * runs, threads, [&](std::int64_t i) {
    const int k = k_min + static_cast<int>(i / runs);
    const int run = static_cast<int>(i % runs);
    const std::int64_t M =
        mc ? (std::int64_t{1} << k) : next_prime(std::int64_t{1} << k);

    const auto t0 = std::chrono::steady_clock::now();
    const StreamKey key{seed, run_tag(k, run), 0};
    const std::complex<double> v =
        mc ? monte_carlo_estimate(f, M, d, key) : plain_lattice_estimate(f, M, d, key);
    const auto t1 = std::chrono::steady_clock::now();

    EstimateRecord rec;
    rec.function = label;
    rec.d = d;
    rec.N = mc ? 0 : M;
    rec.k = k;
    rec.L = 0;
    rec.r = 0.0;
    rec.M = M;
    rec.t = 1;
    rec.run = run;
    rec.estimate_re = v.real();
    rec.estimate_im = v.imag();
    rec.sq_error = std::norm(v - truth);
    rec.seed = seed;
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    std::lock_guard<std::mutex> lock(mu);
    if (sink) sink(rec);
    records.push_back(std::move(rec));
  });

  std::sort(records.begin(), records.end(), [](const EstimateRecord& a, const EstimateRecord& b) {
    return a.k != b.k ? a.k < b.k : a.run < b.run;
  });
  return records;
}

SlopeFit fit_slope(std::span<const EstimateRecord> records) {
  std::map<int, std::pair<double, std::pair<double, int>>> by_k;  // k -> (M, (sum, n))
  for (const auto& rec : records) {
    auto& slot = by_k[rec.k];
    slot.first = static_cast<double>(rec.M);
    slot.second.first += rec.sq_error;
    slot.second.second += 1;
  }
  if (by_k.size() < 3) throw ValidationError("fit_slope: need at least 3 distinct k");

  std::vector<double> xs, ys;
  for (const auto& [k, slot] : by_k) {
    (void)k;
    const double mean = slot.second.first / slot.second.second;
    if (!(mean > 0.0)) throw ValidationError("fit_slope: zero mean squared error at a k");
    xs.push_back(std::log2(slot.first));
    ys.push_back(std::log2(mean));
  }
  const int k_lo = by_k.begin()->first;
  const int k_hi = by_k.rbegin()->first;

  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  fit.points = static_cast<int>(xs.size());
  fit.k_min = k_lo;
  fit.k_max = k_hi;
  return fit;
}

std::string csv_row(const EstimateRecord& rec) {
  std::ostringstream os;
  os << rec.function << ',' << rec.d << ',' << rec.N << ',' << rec.k << ',' << rec.L << ','
     << fmt_double(rec.r) << ',' << rec.M << ',' << rec.t << ',' << rec.run << ','
     << fmt_double(rec.estimate_re) << ',' << fmt_double(rec.estimate_im) << ','
     << fmt_double(rec.sq_error) << ',' << rec.seed << ',' << fmt_double(rec.wall_ms);
  return os.str();
}

void write_csv(std::span<const EstimateRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw EvaluationError("cannot open for writing: " + path.string());
  out << kCsvHeader << '\n';
  for (const auto& rec : records) out << csv_row(rec) << '\n';
  if (!out) throw EvaluationError("write failed: " + path.string());
}

std::vector<EstimateRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw EvaluationError("cannot open for reading: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw ValidationError("csv: missing or unexpected header in " + path.string());
  }
  std::vector<EstimateRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> cols;
    std::string_view rest = line;
    while (true) {
      const std::size_t pos = rest.find(',');
      cols.push_back(rest.substr(0, pos));
      if (pos == std::string_view::npos) break;
      rest = rest.substr(pos + 1);
    }
    if (cols.size() != 14) throw ValidationError("csv: wrong column count in " + path.string());
    EstimateRecord rec;
    rec.function = std::string(cols[0]);
    rec.d = parse_int<int>(cols[1], "d");
    rec.N = parse_int<std::int64_t>(cols[2], "N");
    rec.k = parse_int<int>(cols[3], "k");
    rec.L = parse_int<std::int64_t>(cols[4], "L");
    rec.r = parse_double(cols[5], "r");
    rec.M = parse_int<std::int64_t>(cols[6], "M");
    rec.t = parse_int<int>(cols[7], "t");
    rec.run = parse_int<int>(cols[8], "run");
    rec.estimate_re = parse_double(cols[9], "estimate_re");
    rec.estimate_im = parse_double(cols[10], "estimate_im");
    rec.sq_error = parse_double(cols[11], "sq_error");
    rec.seed = parse_int<std::uint64_t>(cols[12], "seed");
    rec.wall_ms = parse_double(cols[13], "wall_ms");
    records.push_back(std::move(rec));
  }
  return records;
}

ExperimentPlan plan_from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw EvaluationError("cannot open plan: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("plan json parse error: " + std::string(e.what()));
  }
  ExperimentPlan plan;
  try {
    plan.function = j.at("function").get<std::string>();
    plan.d = j.at("d").get<int>();
    plan.N = j.at("N").get<std::int64_t>();
    plan.k_min = j.at("k_min").get<int>();
    plan.k_max = j.at("k_max").get<int>();
    plan.c = j.at("c").get<double>();
    plan.t = j.at("t").get<int>();
    plan.runs = j.at("runs").get<int>();
    plan.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ValidationError("plan json missing/typed field: " + std::string(e.what()));
  }
  validate_plan(plan);
  return plan;
}

std::string plan_to_json(const ExperimentPlan& plan) {
  json j;
  j["function"] = plan.function;
  j["d"] = plan.d;
  j["N"] = plan.N;
  j["k_min"] = plan.k_min;
  j["k_max"] = plan.k_max;
  j["c"] = plan.c;
  j["t"] = plan.t;
  j["runs"] = plan.runs;
  j["seed"] = plan.seed;
  return j.dump(2);
}

void write_summary_json(const ExperimentPlan& plan, const SlopeFit& fit,
                        const std::filesystem::path& path) {
  json j;
  j["plan"] = json::parse(plan_to_json(plan));
  j["fit"] = {{"slope", fit.slope},   {"intercept", fit.intercept}, {"r2", fit.r2},
              {"points", fit.points}, {"k_min", fit.k_min},         {"k_max", fit.k_max}};
  j["version"] = kVersion;
  std::ofstream out(path);
  if (!out) throw EvaluationError("cannot open for writing: " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw EvaluationError("write failed: " + path.string());
}

}  // namespace glint
