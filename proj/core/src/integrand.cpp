#include "glint/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "glint/error.hpp"
#include "glint/rng.hpp"

namespace glint {

double bernoulli_b4(double x) {
  // x^4 - 2x^3 + x^2 - 1/30 == x^2 (x-1)^2 - 1/30
  const double y = x * (x - 1.0);
  return y * y - 1.0 / 30.0;
}

void tent_transform(std::span<double> x) {
  for (double& v : x) v = 1.0 - std::abs(2.0 * v - 1.0);
}

std::vector<double> tent_transform(std::vector<double> x) {
  tent_transform(std::span<double>(x));
  return x;
}

Integrand make_f1(int d) {
  if (d < 1) throw ValidationError("f1: d must be >= 1");
  std::vector<double> inv_j4(static_cast<std::size_t>(d));
  for (int j = 1; j <= d; ++j) {
    const double dj = static_cast<double>(j);
    inv_j4[static_cast<std::size_t>(j - 1)] = 1.0 / (dj * dj * dj * dj);
  }
  Integrand f;
  f.name = "f1";
  f.d = d;
  f.periodic = true;
  f.exact_integral = std::complex<double>(1.0, 0.0);
  f.eval = [inv_j4 = std::move(inv_j4)](std::span<const double> x) {
    double p = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) p *= 1.0 + inv_j4[j] * bernoulli_b4(x[j]);
    return std::complex<double>(p, 0.0);
  };
  return f;
}

Integrand make_f2(int d) {
  if (d < 1) throw ValidationError("f2: d must be >= 1");
  std::vector<double> inv_j2(static_cast<std::size_t>(d));
  for (int j = 1; j <= d; ++j) {
    inv_j2[static_cast<std::size_t>(j - 1)] = 1.0 / (static_cast<double>(j) * j);
  }
  Integrand f;
  f.name = "f2";
  f.d = d;
  f.periodic = true;
  f.exact_integral = std::complex<double>(0.0, 0.0);
  f.eval = [inv_j2 = std::move(inv_j2)](std::span<const double> x) {
    double p = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      p *= 1.0 + (std::abs(4.0 * x[j] - 2.0) - 1.0) * inv_j2[j];
    }
    return std::complex<double>(p - 1.0, 0.0);
  };
  return f;
}

Integrand make_f3(int d) {
  if (d < 1) throw ValidationError("f3: d must be >= 1");
  const double half_d = static_cast<double>(d) / 2.0;
  Integrand f;
  f.name = "f3";
  f.d = d;
  f.exact_integral = std::complex<double>(0.5, 0.0);
  f.eval = [half_d](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return std::complex<double>(s >= half_d ? 1.0 : 0.0, 0.0);
  };
  return f;
}

Integrand make_f3_tent(int d) {
  if (d < 1) throw ValidationError("f3-tent: d must be >= 1");
  const double half_d = static_cast<double>(d) / 2.0;
  Integrand f;
  f.name = "f3-tent";
  f.d = d;
  f.periodic = true;
  f.exact_integral = std::complex<double>(0.5, 0.0);
  f.eval = [half_d](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += 1.0 - std::abs(2.0 * v - 1.0);
    return std::complex<double>(s >= half_d ? 1.0 : 0.0, 0.0);
  };
  return f;
}

Integrand make_constant(int d, std::complex<double> c) {
  Integrand f;
  f.name = "const";
  f.d = d;
  f.periodic = true;
  f.exact_integral = c;
  f.eval = [c](std::span<const double>) { return c; };
  return f;
}

Integrand make_sparse(int d, std::complex<double> a0, std::vector<SparseTerm> terms,
                      std::string name) {
  for (const auto& t : terms) {
    if (static_cast<int>(t.freq.size()) != d) {
      throw ValidationError("sparse: frequency dimension mismatch");
    }
  }
  Integrand f;
  f.name = std::move(name);
  f.d = d;
  f.periodic = true;
  f.exact_integral = a0;
  f.eval = [a0, terms = std::move(terms)](std::span<const double> x) {
    std::complex<double> s = a0;
    for (const auto& t : terms) {
      double dot = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        dot += static_cast<double>(t.freq[i]) * x[i];
      }
      s += t.coef * std::polar(1.0, 2.0 * std::numbers::pi * dot);
    }
    return s;
  };
  return f;
}

Integrand synth_sparse(int K, std::int64_t Mfreq, double l1, int d, std::uint64_t seed) {
  if (K < 0) throw ValidationError("synth_sparse: K must be >= 0");
  if (Mfreq < 1) throw ValidationError("synth_sparse: Mfreq must be >= 1");
  if (d < 1) throw ValidationError("synth_sparse: d must be >= 1");
  // Available nonzero frequencies in (-Mfreq, Mfreq)^d.
  const double avail = std::pow(static_cast<double>(2 * Mfreq - 1), d) - 1.0;
  if (static_cast<double>(K) > avail) {
    throw ValidationError("synth_sparse: K exceeds available frequency count");
  }

  auto rng = RngStream::root(seed).child(0x5350u);  // sparse-synthesis stream
  std::set<std::vector<std::int64_t>> seen;
  std::vector<SparseTerm> terms;
  terms.reserve(static_cast<std::size_t>(K));
  const std::uint64_t span = static_cast<std::uint64_t>(2 * Mfreq - 1);
  while (static_cast<int>(terms.size()) < K) {
    std::vector<std::int64_t> w(static_cast<std::size_t>(d));
    bool zero = true;
    for (int i = 0; i < d; ++i) {
      const std::int64_t v = static_cast<std::int64_t>(rng.below(span)) - (Mfreq - 1);
      w[static_cast<std::size_t>(i)] = v;
      zero = zero && v == 0;
    }
    if (zero || !seen.insert(w).second) continue;
    SparseTerm t;
    t.freq = std::move(w);
    terms.push_back(std::move(t));
  }

  // Magnitudes ~ 1/j with random phases, then scale so sum |a_j| = l1.
  double mag_sum = 0.0;
  for (std::size_t j = 0; j < terms.size(); ++j) mag_sum += 1.0 / static_cast<double>(j + 1);
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const double mag = (mag_sum > 0.0 ? l1 / mag_sum : 0.0) / static_cast<double>(j + 1);
    const double phase = 2.0 * std::numbers::pi * rng.next_unit();
    terms[j].coef = std::polar(mag, phase);
  }
  const std::complex<double> a0 =
      std::polar(rng.next_unit(), 2.0 * std::numbers::pi * rng.next_unit());
  return make_sparse(d, a0, std::move(terms), "sparse");
}

namespace {

// "sparse:K=8,M=16,l1=1.5[,seed=7]"
Integrand parse_sparse_spec(const std::string& spec, int d) {
  std::int64_t K = -1, M = -1;
  double l1 = -1.0;
  std::uint64_t seed = 0;
  std::size_t pos = spec.find(':');
  std::string args = pos == std::string::npos ? "" : spec.substr(pos + 1);
  while (!args.empty()) {
    const std::size_t comma = args.find(',');
    const std::string kv = args.substr(0, comma);
    args = comma == std::string::npos ? "" : args.substr(comma + 1);
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) throw ValidationError("sparse spec: expected key=value, got " + kv);
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    if (key == "K") K = std::stoll(val);
    else if (key == "M") M = std::stoll(val);
    else if (key == "l1") l1 = std::stod(val);
    else if (key == "seed") seed = std::stoull(val);
    else throw ValidationError("sparse spec: unknown key " + key);
  }
  if (K < 0 || M < 1 || !(l1 >= 0.0)) {
    throw ValidationError("sparse spec: need K=..,M=..,l1=..");
  }
  return synth_sparse(static_cast<int>(K), M, l1, d, seed);
}

}  // namespace

Integrand parse_integrand(const std::string& spec, int d) {
  if (spec == "f1") return make_f1(d);
  if (spec == "f2") return make_f2(d);
  if (spec == "f3") return make_f3(d);
  if (spec == "f3-tent") return make_f3_tent(d);
  if (spec.rfind("const:", 0) == 0) {
    return make_constant(d, std::complex<double>(std::stod(spec.substr(6)), 0.0));
  }
  if (spec.rfind("sparse", 0) == 0) return parse_sparse_spec(spec, d);
  throw ValidationError("unknown integrand: " + spec);
}

}  // namespace glint
