#include "glint/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "glint/accum.hpp"
#include "glint/error.hpp"
#include "glint/primes.hpp"

namespace glint {
namespace {

// Domain tags under one repetition stream. Separate domains keep the shift,
// anchor, jitter, and plain-sample streams from aliasing.
constexpr std::uint64_t kDomShift = 1;
constexpr std::uint64_t kDomAnchor = 2;
constexpr std::uint64_t kDomJitter = 3;
constexpr std::uint64_t kDomSample = 4;

std::complex<double> checked_eval(const Integrand& f, std::span<const double> x) {
  const std::complex<double> v = f(x);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw EvaluationError("integrand '" + f.name + "' returned a non-finite value");
  }
  return v;
}

std::int64_t guard_threshold(const Params& p, const EstimatorOptions& opt) {
  return opt.guard_threshold >= 0 ? opt.guard_threshold : 200 * p.L + 100;
}

// Candidate shifts k with k + x inside [lo, hi): k in [lo - x, hi - x).
struct AxisRange {
  std::int64_t first;
  std::int64_t count;
};

AxisRange axis_shift_range(double lo, double hi, double x) {
  const std::int64_t first = static_cast<std::int64_t>(std::ceil(lo - x));
  const std::int64_t last = static_cast<std::int64_t>(std::ceil(hi - x)) - 1;
  return {first, std::max<std::int64_t>(0, last - first + 1)};
}

}  // namespace

RngStream rep_stream(const StreamKey& key) {
  return RngStream::root(key.seed).child(key.run).child(key.rep);
}

Estimate estimate_with_draw(const Integrand& f, const Params& p, const Window& w,
                            const LatticeDraw& draw, const StreamKey& key,
                            const EstimatorOptions& opt) {
  if (w.half_width() != p.L || w.modulus() != p.N) {
    throw ValidationError("estimator: window does not match params");
  }
  const auto rep = rep_stream(key);
  const auto jitter_base = rep.child(kDomJitter);
  const std::size_t d = static_cast<std::size_t>(p.d);

  std::vector<std::int64_t> m(d);
  std::vector<double> x(d);
  KahanComplexSum acc;
  for (std::int64_t l = -p.L; l <= p.L; ++l) {
    node_into(draw.anchor, draw.shift, l, p.N, m);
    if (opt.jitter) {
      jittered_point_into(m, p.N, jitter_base.child(static_cast<std::uint64_t>(l + p.L)), x);
    } else {
      grid_point_into(m, p.N, x);
    }
    acc.add(checked_eval(f, x) * w.weight(l));
  }
  return Estimate{acc.value(), 2 * p.L + 1, false, key};
}

Estimate estimate_once(const Integrand& f, const Params& p, const Window& w,
                       const StreamKey& key, const EstimatorOptions& opt) {
  const auto rep = rep_stream(key);
  LatticeDraw draw{draw_shift(p.N, p.d, rep.child(kDomShift)),
                   draw_anchor(p.N, p.d, rep.child(kDomAnchor))};
  return estimate_with_draw(f, p, w, draw, key, opt);
}

std::complex<double> complex_median(std::span<const std::complex<double>> values) {
  if (values.empty() || values.size() % 2 == 0) {
    throw ValidationError("complex_median: length must be odd");
  }
  std::vector<double> re(values.size()), im(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    re[i] = values[i].real();
    im[i] = values[i].imag();
  }
  const std::size_t mid = values.size() / 2;
  std::nth_element(re.begin(), re.begin() + static_cast<std::ptrdiff_t>(mid), re.end());
  std::nth_element(im.begin(), im.begin() + static_cast<std::ptrdiff_t>(mid), im.end());
  return {re[mid], im[mid]};
}

Estimate median_estimate(const Integrand& f, const Params& p, const Window& w,
                         const StreamKey& key, const EstimatorOptions& opt) {
  std::vector<std::complex<double>> shots(static_cast<std::size_t>(p.t));
  std::int64_t evals = 0;
  for (int j = 0; j < p.t; ++j) {
    StreamKey k = key;
    k.rep = key.rep + static_cast<std::uint64_t>(j);
    const Estimate e = estimate_once(f, p, w, k, opt);
    shots[static_cast<std::size_t>(j)] = e.value;
    evals += e.evaluations;
  }
  return Estimate{complex_median(shots), evals, false, key};
}

Integrand periodize(const Integrand& f, std::int64_t shift_cap_per_axis) {
  if (!f.support) throw ValidationError("periodize: integrand has no support spec");
  const auto& spec = *f.support;
  if (static_cast<int>(spec.box.size()) != f.d) {
    throw ValidationError("periodize: box dimension mismatch");
  }
  for (const auto& [lo, hi] : spec.box) {
    if (!(lo < hi)) throw ValidationError("periodize: box needs lo < hi");
    // Largest per-axis candidate count over x in [0,1).
    if (std::floor(hi) - std::ceil(lo) + 1.0 > static_cast<double>(shift_cap_per_axis)) {
      throw ValidationError("periodize: box admits more shifts per axis than the cap");
    }
  }

  Integrand F;
  F.name = f.name + "-per";
  F.d = f.d;
  F.exact_integral = f.exact_integral;  // INT over the support = INT of F over the cube
  F.eval = [f](std::span<const double> x) {
    const auto& sp = *f.support;
    const std::size_t d = x.size();
    std::vector<AxisRange> ranges(d);
    for (std::size_t i = 0; i < d; ++i) {
      ranges[i] = axis_shift_range(sp.box[i].first, sp.box[i].second, x[i]);
      if (ranges[i].count == 0) return std::complex<double>(0.0, 0.0);
    }
    std::vector<std::int64_t> idx(d, 0);
    std::vector<double> y(d);
    KahanComplexSum acc;
    for (;;) {
      for (std::size_t i = 0; i < d; ++i) {
        y[i] = x[i] + static_cast<double>(ranges[i].first + idx[i]);
      }
      if (!sp.member || sp.member(y)) acc.add(f(y));
      std::size_t i = 0;
      while (i < d && ++idx[i] == ranges[i].count) idx[i++] = 0;
      if (i == d) break;
    }
    return acc.value();
  };
  return F;
}

Estimate guarded_estimate(const Integrand& f, const Params& p, const Window& w,
                          const StreamKey& key, const EstimatorOptions& opt) {
  if (!f.support) throw ValidationError("guarded_estimate: integrand has no support spec");
  if (w.half_width() != p.L || w.modulus() != p.N) {
    throw ValidationError("estimator: window does not match params");
  }
  const auto& spec = *f.support;
  if (static_cast<int>(spec.box.size()) != f.d) {
    throw ValidationError("guarded_estimate: box dimension mismatch");
  }
  for (const auto& [lo, hi] : spec.box) {
    if (!(lo < hi)) throw ValidationError("guarded_estimate: box needs lo < hi");
    if (std::floor(hi) - std::ceil(lo) + 1.0 > static_cast<double>(opt.shift_cap_per_axis)) {
      throw ValidationError("guarded_estimate: box admits more shifts per axis than the cap");
    }
  }

  const auto rep = rep_stream(key);
  LatticeDraw draw{draw_shift(p.N, p.d, rep.child(kDomShift)),
                   draw_anchor(p.N, p.d, rep.child(kDomAnchor))};
  const auto jitter_base = rep.child(kDomJitter);
  const std::int64_t threshold = guard_threshold(p, opt);
  const std::size_t d = static_cast<std::size_t>(p.d);
  const std::size_t nodes = static_cast<std::size_t>(2 * p.L + 1);

  // Pass 1: enumerate candidate points per node without evaluating f.
  std::vector<std::vector<double>> candidates;  // flattened d-tuples per node
  candidates.resize(nodes);
  std::vector<std::int64_t> m(d);
  std::vector<double> x(d), y(d);
  std::vector<AxisRange> ranges(d);
  std::vector<std::int64_t> idx(d);
  std::int64_t total = 0;
  for (std::int64_t l = -p.L; l <= p.L; ++l) {
    node_into(draw.anchor, draw.shift, l, p.N, m);
    if (opt.jitter) {
      jittered_point_into(m, p.N, jitter_base.child(static_cast<std::uint64_t>(l + p.L)), x);
    } else {
      grid_point_into(m, p.N, x);
    }
    bool empty = false;
    for (std::size_t i = 0; i < d; ++i) {
      ranges[i] = axis_shift_range(spec.box[i].first, spec.box[i].second, x[i]);
      if (ranges[i].count == 0) empty = true;
    }
    if (empty) continue;
    std::fill(idx.begin(), idx.end(), 0);
    auto& mine = candidates[static_cast<std::size_t>(l + p.L)];
    for (;;) {
      for (std::size_t i = 0; i < d; ++i) {
        y[i] = x[i] + static_cast<double>(ranges[i].first + idx[i]);
      }
      if (!spec.member || spec.member(y)) {
        mine.insert(mine.end(), y.begin(), y.end());
        if (++total > threshold) {
          return Estimate{{0.0, 0.0}, 0, true, key};  // abort before any f call
        }
      }
      std::size_t i = 0;
      while (i < d && ++idx[i] == ranges[i].count) idx[i++] = 0;
      if (i == d) break;
    }
  }

  // Pass 2: the filter sum of the periodization over the surviving sets.
  KahanComplexSum acc;
  std::int64_t evals = 0;
  for (std::int64_t l = -p.L; l <= p.L; ++l) {
    const auto& mine = candidates[static_cast<std::size_t>(l + p.L)];
    KahanComplexSum node_sum;
    for (std::size_t off = 0; off < mine.size(); off += d) {
      node_sum.add(checked_eval(f, std::span<const double>(mine.data() + off, d)));
      ++evals;
    }
    acc.add(node_sum.value() * w.weight(l));
  }
  return Estimate{acc.value(), evals, false, key};
}

std::complex<double> plain_lattice_with_draw(const Integrand& f, std::int64_t M, int d,
                                             const LatticeDraw& draw, const StreamKey& key,
                                             bool jitter) {
  if (!is_prime(M)) throw ValidationError("plain_lattice: M must be prime");
  const auto jitter_base = rep_stream(key).child(kDomJitter);
  const std::size_t dd = static_cast<std::size_t>(d);
  std::vector<std::int64_t> m(dd);
  std::vector<double> x(dd);
  KahanComplexSum acc;
  for (std::int64_t l = 0; l < M; ++l) {
    node_into(draw.anchor, draw.shift, l, M, m);
    if (jitter) {
      jittered_point_into(m, M, jitter_base.child(static_cast<std::uint64_t>(l)), x);
    } else {
      grid_point_into(m, M, x);
    }
    acc.add(checked_eval(f, x));
  }
  return acc.value() / static_cast<double>(M);
}

std::complex<double> plain_lattice_estimate(const Integrand& f, std::int64_t M, int d,
                                            const StreamKey& key, bool jitter) {
  if (!is_prime(M)) throw ValidationError("plain_lattice: M must be prime");
  const auto rep = rep_stream(key);
  LatticeDraw draw{draw_shift(M, d, rep.child(kDomShift)),
                   draw_anchor(M, d, rep.child(kDomAnchor))};
  return plain_lattice_with_draw(f, M, d, draw, key, jitter);
}

std::complex<double> monte_carlo_estimate(const Integrand& f, std::int64_t M, int d,
                                          const StreamKey& key) {
  if (M < 1) throw ValidationError("monte_carlo: M must be >= 1");
  const auto base = rep_stream(key).child(kDomSample);
  const std::size_t dd = static_cast<std::size_t>(d);
  std::vector<double> x(dd);
  KahanComplexSum acc;
  for (std::int64_t i = 0; i < M; ++i) {
    auto point = base.child(static_cast<std::uint64_t>(i));
    for (std::size_t j = 0; j < dd; ++j) {
      x[j] = point.child(static_cast<std::uint64_t>(j)).next_unit();
    }
    acc.add(checked_eval(f, x));
  }
  return acc.value() / static_cast<double>(M);
}

}  // namespace glint
