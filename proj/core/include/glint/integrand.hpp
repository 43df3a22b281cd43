#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace glint {

/// Support description for compactly supported integrands: an axis-aligned
/// bounding box plus a membership test that is false outside the box.
struct CompactSupportSpec {
  std::vector<std::pair<double, double>> box;  // (lo_i, hi_i), lo_i < hi_i
  std::function<bool(std::span<const double>)> member;
};

/// A pure evaluation on [0,1)^d (or on the support box for compactly
/// supported functions), plus optional ground truth for error metrics.
struct Integrand {
  std::string name;
  int d = 1;
  std::function<std::complex<double>(std::span<const double>)> eval;
  std::optional<std::complex<double>> exact_integral;
  std::optional<CompactSupportSpec> support;
  /// Continuous across the torus seam; the filter's high-order rates need
  /// this (use the tent transform to get it).
  bool periodic = false;

  std::complex<double> operator()(std::span<const double> x) const { return eval(x); }
};

/// Degree-4 Bernoulli polynomial x^4 - 2x^3 + x^2 - 1/30.
double bernoulli_b4(double x);

/// Componentwise tent map x -> 1 - |2x - 1| (measure preserving).
void tent_transform(std::span<double> x);
std::vector<double> tent_transform(std::vector<double> x);

/// prod_j [1 + B4(x_j)/j^4]; exact integral 1.
Integrand make_f1(int d);

/// prod_j [1 + (|4x_j - 2| - 1)/j^2] - 1; exact integral 0.
Integrand make_f2(int d);

/// Indicator of sum_i x_i >= d/2 (boundary inclusive); exact integral 1/2.
Integrand make_f3(int d);

/// f3 composed with the tent transform; exact integral 1/2.
Integrand make_f3_tent(int d);

Integrand make_constant(int d, std::complex<double> c);

/// One exponential term coef * exp(2*pi*i * freq . x).
struct SparseTerm {
  std::vector<std::int64_t> freq;
  std::complex<double> coef;
};

/// a0 + sum of terms; exact integral a0.
Integrand make_sparse(int d, std::complex<double> a0, std::vector<SparseTerm> terms,
                      std::string name = "sparse");

/// Random member of the sparse trigonometric class: K distinct nonzero
/// frequencies in (-Mfreq, Mfreq)^d, random phases, magnitudes ~ 1/j scaled
/// so sum_j |a_j| = l1 exactly; a0 drawn in the unit disc and recorded as
/// the exact integral. Rejects K above the number of available frequencies.
Integrand synth_sparse(int K, std::int64_t Mfreq, double l1, int d, std::uint64_t seed);

/// Name-based registry for the CLI: f1, f2, f3, f3-tent, const:<re>, and
/// sparse:K=..,M=..,l1=..[,seed=..]. Throws ValidationError for unknown names.
Integrand parse_integrand(const std::string& spec, int d);

}  // namespace glint
