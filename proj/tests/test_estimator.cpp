#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "glint/error.hpp"
#include "glint/estimator.hpp"
#include "glint/integrand.hpp"
#include "glint/oracle.hpp"
#include "glint/params.hpp"
#include "glint/window.hpp"

using namespace glint;

namespace {

Integrand pure_frequency(int d, std::vector<std::int64_t> w) {
  SparseTerm t;
  t.freq = std::move(w);
  t.coef = {1.0, 0.0};
  return make_sparse(d, {0.0, 0.0}, {t}, "pure");
}

}  // namespace

TEST_CASE("constant reproduction: estimate equals c * mass for every draw") {
  const auto p = make_params(3, 101, 8, 2.5, 1, 9);
  const auto w = Window::build(p.L, p.r, p.N);
  const auto f = make_constant(3, {2.0, -1.0});
  for (std::uint64_t run = 0; run < 50; ++run) {
    const auto e = estimate_once(f, p, w, StreamKey{9, run, 0});
    CHECK(std::abs(e.value - std::complex<double>(2.0, -1.0) * w.mass()) < 1e-12);
    CHECK(e.evaluations == 2 * p.L + 1);
    CHECK_FALSE(e.aborted);
  }
}

TEST_CASE("linearity on identical streams") {
  const auto p = make_params(2, 101, 6, 2.0, 1, 4);
  const auto w = Window::build(p.L, p.r, p.N);
  const auto f = make_f1(2);
  const auto g = make_f2(2);
  Integrand combo;
  combo.name = "combo";
  combo.d = 2;
  combo.eval = [&](std::span<const double> x) { return 2.0 * f(x) - 3.0 * g(x); };
  const StreamKey key{4, 11, 0};
  const auto ef = estimate_once(f, p, w, key);
  const auto eg = estimate_once(g, p, w, key);
  const auto ec = estimate_once(combo, p, w, key);
  CHECK(std::abs(ec.value - (2.0 * ef.value - 3.0 * eg.value)) < 1e-12);
}

TEST_CASE("non-finite integrand values surface as EvaluationError") {
  const auto p = make_params(1, 101, 4, 1.5, 1, 0);
  const auto w = Window::build(p.L, p.r, p.N);
  Integrand bad;
  bad.name = "bad";
  bad.d = 1;
  bad.eval = [](std::span<const double>) {
    return std::complex<double>(std::numeric_limits<double>::quiet_NaN(), 0.0);
  };
  CHECK_THROWS_AS((void)estimate_once(bad, p, w, StreamKey{}), EvaluationError);
}

TEST_CASE("complex_median: pinned values") {
  using cd = std::complex<double>;
  const std::vector<cd> single = {{3.0, 0.0}};
  CHECK(complex_median(single) == cd{3.0, 0.0});
  const std::vector<cd> trio = {{1.0, 2.0}, {3.0, 0.0}, {2.0, 5.0}};
  CHECK(complex_median(trio) == cd{2.0, 2.0});  // componentwise
  const std::vector<cd> five = {{-1, 0}, {0, 0}, {1, 0}, {2, 0}, {5, 0}};
  CHECK(complex_median(five) == cd{1.0, 0.0});
  const std::vector<cd> even = {{1, 0}, {2, 0}};
  CHECK_THROWS_AS((void)complex_median(even), ValidationError);
}

TEST_CASE("complex_median: permutation invariance and shift equivariance") {
  using cd = std::complex<double>;
  std::vector<cd> v = {{0.3, 1.0}, {-2.0, 0.4}, {1.7, -0.2}, {0.0, 0.0}, {5.0, 2.0}};
  const cd base = complex_median(v);
  std::vector<cd> perm = {v[3], v[0], v[4], v[2], v[1]};
  CHECK(complex_median(perm) == base);
  const cd shift{-0.75, 2.25};
  std::vector<cd> shifted = v;
  for (auto& z : shifted) z += shift;
  CHECK(std::abs(complex_median(shifted) - (base + shift)) < 1e-15);
}

TEST_CASE("median_estimate: t=1 equals the single shot, constants are fixed points") {
  auto p = make_params(2, 101, 6, 2.0, 1, 21);
  const auto w = Window::build(p.L, p.r, p.N);
  const auto f = make_f1(2);
  const StreamKey key{21, 0, 0};
  CHECK(median_estimate(f, p, w, key).value == estimate_once(f, p, w, key).value);

  p.t = 7;
  const auto c = make_constant(2, {0.5, 0.0});
  const auto e = median_estimate(c, p, w, key);
  CHECK(std::abs(e.value - 0.5 * w.mass()) < 1e-12);
  CHECK(e.evaluations == 7 * (2 * p.L + 1));
}

TEST_CASE("jittered grid mean is the cell average (f(x) = x in d=1)") {
  // For a fixed node m/N, averaging over the jitter gives (m + 1/2)/N.
  const std::int64_t N = 101, m = 37;
  auto base = RngStream::root(3141);
  double sum = 0.0;
  const int n = 400000;
  for (int i = 0; i < n; ++i) {
    sum += jittered_coord(m, base.next_unit(), N);
  }
  const double expect = (static_cast<double>(m) + 0.5) / static_cast<double>(N);
  // sd of the mean = (1/N)/sqrt(12 n) ~ 4.5e-9
  CHECK(sum / n == doctest::Approx(expect).epsilon(2e-5));
}

TEST_CASE("exhaustive (H, z) enumeration matches the oracle moments") {
  // N=11, d=1, L=3, r=2, jitter off: 110 draws, three test functions.
  const auto p = make_params(1, 11, 3, 2.0, 1, 0);
  const auto w = Window::build(p.L, p.r, p.N);
  const std::vector<Integrand> fs = {make_constant(1, {1.0, 0.0}), pure_frequency(1, {1}),
                                     pure_frequency(1, {2})};
  for (const auto& f : fs) {
    std::complex<double> mean{0.0, 0.0};
    double second = 0.0;
    int count = 0;
    EstimatorOptions opt;
    opt.jitter = false;
    for (std::int64_t h = 1; h < 11; ++h) {
      for (std::int64_t z = 0; z < 11; ++z) {
        LatticeDraw draw{{h}, {z}};
        const auto e = estimate_with_draw(f, p, w, draw, StreamKey{}, opt);
        mean += e.value;
        second += std::norm(e.value);
        ++count;
      }
    }
    mean /= static_cast<double>(count);
    second /= static_cast<double>(count);
    const auto stats = oracle::exhaustive_estimator_stats(f, 11, 1, 3, 2.0);
    CHECK(std::abs(mean - stats.mean) < 1e-12);
    CHECK(second == doctest::Approx(stats.second_moment).epsilon(1e-12));
  }
}

TEST_CASE("periodize: unit cube is the identity") {
  auto f = make_f1(2);
  f.support = CompactSupportSpec{{{0.0, 1.0}, {0.0, 1.0}},
                                 [](std::span<const double>) { return true; }};
  const auto F = periodize(f);
  std::vector<double> x = {0.3, 0.9};
  CHECK(F(x) == f(x));
  CHECK(F.exact_integral == f.exact_integral);
}

TEST_CASE("periodize: translated unit cell tiles to one") {
  Integrand ind;
  ind.name = "indicator";
  ind.d = 1;
  ind.eval = [](std::span<const double> x) {
    return std::complex<double>(x[0] >= 0.5 && x[0] < 1.5 ? 1.0 : 0.0, 0.0);
  };
  ind.support = CompactSupportSpec{{{0.5, 1.5}},
                                   [](std::span<const double> x) {
                                     return x[0] >= 0.5 && x[0] < 1.5;
                                   }};
  const auto F = periodize(ind);
  for (double x : {0.0, 0.2, 0.5, 0.77, 0.99}) {
    const double xv[] = {x};
    CHECK(F(xv).real() == 1.0);
  }
}

TEST_CASE("periodize: centered box splits at 1/2") {
  Integrand g;
  g.name = "bump";
  g.d = 1;
  g.eval = [](std::span<const double> x) { return std::complex<double>(x[0], 0.0); };
  g.support = CompactSupportSpec{{{-0.5, 0.5}},
                                 [](std::span<const double> x) {
                                   return x[0] >= -0.5 && x[0] < 0.5;
                                 }};
  const auto F = periodize(g);
  const double a[] = {0.3};
  const double b[] = {0.7};
  CHECK(F(a).real() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(F(b).real() == doctest::Approx(-0.3).epsilon(1e-15));  // f(0.7 - 1)
}

TEST_CASE("periodize rejects runaway boxes and missing specs") {
  auto f = make_f1(1);
  CHECK_THROWS_AS((void)periodize(f), ValidationError);
  f.support = CompactSupportSpec{{{0.0, 1e7}}, nullptr};
  CHECK_THROWS_AS((void)periodize(f, 4096), ValidationError);
}

TEST_CASE("guarded estimate: unit-cube support never aborts, matches the plain path") {
  auto f = make_f1(2);
  f.support = CompactSupportSpec{{{0.0, 1.0}, {0.0, 1.0}},
                                 [](std::span<const double>) { return true; }};
  const auto p = make_params(2, 101, 8, 2.5, 1, 77);
  const auto w = Window::build(p.L, p.r, p.N);
  for (std::uint64_t run = 0; run < 300; ++run) {
    const auto g = guarded_estimate(f, p, w, StreamKey{77, run, 0});
    CHECK_FALSE(g.aborted);
    CHECK(g.evaluations == 2 * p.L + 1);
    const auto e = estimate_once(f, p, w, StreamKey{77, run, 0});
    CHECK(std::abs(g.value - e.value) < 1e-13);
  }
}

TEST_CASE("guarded estimate: thin slab aborts without evaluating f") {
  int calls = 0;
  Integrand f;
  f.name = "slab";
  f.d = 2;
  f.eval = [&calls](std::span<const double>) {
    ++calls;
    return std::complex<double>(1.0, 0.0);
  };
  f.support = CompactSupportSpec{{{0.0, 1.0}, {0.0, 1000.0}}, nullptr};
  const auto p = make_params(2, 101, 8, 2.5, 1, 5);
  const auto w = Window::build(p.L, p.r, p.N);
  for (std::uint64_t run = 0; run < 50; ++run) {
    const auto e = guarded_estimate(f, p, w, StreamKey{5, run, 0});
    CHECK(e.aborted);
    CHECK(e.value == std::complex<double>(0.0, 0.0));
    CHECK(e.evaluations == 0);
  }
  CHECK(calls == 0);
}

TEST_CASE("guarded estimate: custom threshold override") {
  auto f = make_constant(1, {1.0, 0.0});
  f.support = CompactSupportSpec{{{0.0, 1.0}}, nullptr};
  const auto p = make_params(1, 101, 4, 1.5, 1, 2);
  const auto w = Window::build(p.L, p.r, p.N);
  EstimatorOptions opt;
  opt.guard_threshold = 3;  // 2L+1 = 9 candidates > 3
  const auto e = guarded_estimate(f, p, w, StreamKey{2, 0, 0}, opt);
  CHECK(e.aborted);
}

TEST_CASE("plain lattice: constants are exact, composite M rejected") {
  const auto c = make_constant(3, {0.75, 0.25});
  const auto v = plain_lattice_estimate(c, 101, 3, StreamKey{3, 0, 0});
  CHECK(std::abs(v - std::complex<double>(0.75, 0.25)) < 1e-14);
  CHECK_THROWS_AS((void)plain_lattice_estimate(c, 100, 3, StreamKey{}), ValidationError);
}

TEST_CASE("plain lattice: full character sum cancels for every draw at M=5") {
  const auto f = pure_frequency(1, {1});
  for (std::int64_t h = 1; h < 5; ++h) {
    for (std::int64_t z = 0; z < 5; ++z) {
      LatticeDraw draw{{h}, {z}};
      const auto v = plain_lattice_with_draw(f, 5, 1, draw, StreamKey{}, false);
      CHECK(std::abs(v) < 1e-15);
    }
  }
}

TEST_CASE("monte carlo: constants, M=1, and basic variance scaling") {
  const auto c = make_constant(2, {1.5, 0.0});
  CHECK(std::abs(monte_carlo_estimate(c, 1, 2, StreamKey{1, 0, 0}) -
                 std::complex<double>(1.5, 0.0)) < 1e-15);

  // MSE of MC on f3 scales like Var/M = 1/(4M): check at two M values.
  const auto f3 = make_f3(5);
  for (std::int64_t M : {std::int64_t{64}, std::int64_t{512}}) {
    double mse = 0.0;
    const int runs = 300;
    for (int run = 0; run < runs; ++run) {
      const auto v =
          monte_carlo_estimate(f3, M, 5, StreamKey{11, static_cast<std::uint64_t>(run), 0});
      mse += std::norm(v - std::complex<double>(0.5, 0.0));
    }
    mse /= runs;
    const double expect = 0.25 / static_cast<double>(M);
    CHECK(mse == doctest::Approx(expect).epsilon(0.35));  // chi^2 spread over 300 runs
  }
}
