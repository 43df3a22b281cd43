#include <doctest.h>

#include <cmath>
#include <complex>

#include "glint/error.hpp"
#include "glint/estimator.hpp"
#include "glint/integrand.hpp"
#include "glint/rng.hpp"
#include "test_support.hpp"

using glint::bernoulli_b4;
using glint::Integrand;

TEST_CASE("bernoulli B4: endpoint values and zero integral") {
  CHECK(bernoulli_b4(0.0) == doctest::Approx(-1.0 / 30.0).epsilon(1e-15));
  CHECK(bernoulli_b4(1.0) == doctest::Approx(-1.0 / 30.0).epsilon(1e-15));
  CHECK(bernoulli_b4(0.5) == doctest::Approx(0.5 * 0.5 * 0.25 - 1.0 / 30.0).epsilon(1e-15));
  const double integral = testsupport::integrate_01(bernoulli_b4);
  CHECK(std::abs(integral) < 1e-15);
}

TEST_CASE("f1: pinned point values and ground truth") {
  const auto f1 = glint::make_f1(1);
  const double x0[] = {0.0};
  CHECK(f1(x0).real() == doctest::Approx(29.0 / 30.0).epsilon(1e-15));

  const auto f1d2 = glint::make_f1(2);
  const double x00[] = {0.0, 0.0};
  CHECK(f1d2(x00).real() ==
        doctest::Approx((29.0 / 30.0) * (1.0 - 1.0 / (30.0 * 16.0))).epsilon(1e-15));
  CHECK(f1d2.exact_integral->real() == 1.0);
}

TEST_CASE("f1: exact integral 1 cross-checked by Monte Carlo at d=3") {
  const auto f = glint::make_f1(3);
  const auto v = glint::monte_carlo_estimate(f, 200000, 3, glint::StreamKey{404, 0, 0});
  // per-factor variance is tiny (B4/j^4 amplitude ~ 0.03), 3 sigma << 1e-3
  CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(v.imag() == 0.0);
}

TEST_CASE("f2: pinned values and zero per-factor integral") {
  const auto f2 = glint::make_f2(1);
  const double a[] = {0.5};
  const double b[] = {0.0};
  CHECK(f2(a).real() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(f2(b).real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f2.exact_integral->real() == 0.0);
  const double factor_integral =
      testsupport::integrate_01_split([](double x) { return std::abs(4.0 * x - 2.0) - 1.0; });
  CHECK(std::abs(factor_integral) < 1e-14);
}

TEST_CASE("f3: indicator with inclusive boundary") {
  const auto f3 = glint::make_f3(2);
  const double mid[] = {0.5, 0.5};
  CHECK(f3(mid).real() == 1.0);
  const auto f3d1 = glint::make_f3(1);
  const double lo[] = {0.49};
  CHECK(f3d1(lo).real() == 0.0);
  CHECK(f3d1.exact_integral->real() == 0.5);
}

TEST_CASE("tent transform: pinned points and measure preservation") {
  std::vector<double> x = {0.25, 0.0, 0.5};
  x = glint::tent_transform(std::move(x));
  CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(x[1] == 0.0);
  CHECK(x[2] == 1.0);

  // integral of g(tent(x)) equals integral of g for a smooth g, d=1
  // (split quadrature: the composition has a kink at 1/2)
  auto g = [](double u) { return std::cos(3.0 * u) + u * u; };
  const double direct = testsupport::integrate_01(g);
  const double composed = testsupport::integrate_01_split(
      [&](double u) { return g(1.0 - std::abs(2.0 * u - 1.0)); });
  CHECK(composed == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("f3-tent equals f3 after the transform") {
  const auto ft = glint::make_f3_tent(4);
  const auto f3 = glint::make_f3(4);
  auto rng = glint::RngStream::root(17);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> x(4);
    for (auto& v : x) v = rng.next_unit();
    const auto direct = ft(x);
    const auto composed = f3(glint::tent_transform(x));
    CHECK(direct.real() == composed.real());
  }
}

TEST_CASE("synth_sparse: class constraints hold by construction") {
  const auto f = glint::synth_sparse(9, 16, 1.5, 4, 2024);
  CHECK(f.d == 4);
  CHECK(f.exact_integral.has_value());
  // deterministic given the seed
  const auto g = glint::synth_sparse(9, 16, 1.5, 4, 2024);
  std::vector<double> x = {0.1, 0.7, 0.3, 0.9};
  CHECK(f(x) == g(x));
  CHECK(std::abs(f(x)) <= std::abs(*f.exact_integral) + 1.5 + 1e-12);  // sum|a_j| <= l1
}

TEST_CASE("synth_sparse: degenerate and rejection cases") {
  const auto c = glint::synth_sparse(0, 4, 1.0, 2, 3);
  std::vector<double> x = {0.2, 0.8};
  CHECK(c(x) == *c.exact_integral);  // K = 0 is a constant
  CHECK_THROWS_AS(glint::synth_sparse(9, 1, 1.0, 1, 3), glint::ValidationError);  // only 0 freq
}

TEST_CASE("sum of coefficient magnitudes matches l1 exactly by normalization") {
  // reconstruct sum |a_j| by probing: f(0) - a0 = sum a_j; use random phases
  // instead: evaluate the l1 norm via the known construction seed twice.
  const double l1 = 2.25;
  const auto f = glint::synth_sparse(12, 8, l1, 3, 99);
  // |f(x) - a0| <= l1 for every x, with equality achievable only at phase
  // alignment; check the bound over a sweep.
  auto rng = glint::RngStream::root(1);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> x(3);
    for (auto& v : x) v = rng.next_unit();
    worst = std::max(worst, std::abs(f(x) - *f.exact_integral));
  }
  CHECK(worst <= l1 + 1e-12);
  CHECK(worst > 0.1 * l1);  // the terms are actually there
}

TEST_CASE("parse_integrand registry") {
  CHECK(glint::parse_integrand("f1", 3).name == "f1");
  CHECK(glint::parse_integrand("f3-tent", 5).d == 5);
  CHECK(glint::parse_integrand("f1", 3).periodic);
  CHECK(glint::parse_integrand("f2", 3).periodic);  // continuous at the seam
  CHECK_FALSE(glint::parse_integrand("f3", 3).periodic);
  CHECK(glint::parse_integrand("f3-tent", 3).periodic);
  CHECK(glint::parse_integrand("const:2.5", 2).exact_integral->real() == 2.5);
  const auto sp = glint::parse_integrand("sparse:K=4,M=8,l1=1.0,seed=5", 3);
  CHECK(sp.d == 3);
  CHECK_THROWS_AS(glint::parse_integrand("nope", 2), glint::ValidationError);
  CHECK_THROWS_AS(glint::parse_integrand("sparse:K=4", 2), glint::ValidationError);
}

TEST_CASE("corpus integrands are finite everywhere on a sweep") {
  auto rng = glint::RngStream::root(8);
  for (const auto* name : {"f1", "f2", "f3", "f3-tent"}) {
    const auto f = glint::parse_integrand(name, 6);
    for (int i = 0; i < 500; ++i) {
      std::vector<double> x(6);
      for (auto& v : x) v = rng.next_unit();
      const auto v = f(x);
      CHECK(std::isfinite(v.real()));
      CHECK(v.imag() == 0.0);
    }
  }
}
