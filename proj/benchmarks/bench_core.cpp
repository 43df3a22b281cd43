// Microbenchmarks for the hot paths: window construction, node generation,
// jittered evaluation, and full single-shot estimates.

#include <benchmark/benchmark.h>

#include <complex>

#include "glint/estimator.hpp"
#include "glint/integrand.hpp"
#include "glint/lattice.hpp"
#include "glint/params.hpp"
#include "glint/window.hpp"

namespace {

constexpr std::int64_t kN = 5600748293801LL;

void BM_WindowBuild(benchmark::State& state) {
  const std::int64_t L = std::int64_t{1} << state.range(0);
  const double r = 0.114 * static_cast<double>(L);
  for (auto _ : state) {
    auto w = glint::Window::build(L, r, kN);
    benchmark::DoNotOptimize(w.weight(0));
  }
  state.SetComplexityN(2 * L + 1);
}
BENCHMARK(BM_WindowBuild)->DenseRange(8, 15, 1)->Complexity(benchmark::oN);

void BM_BandResponse(benchmark::State& state) {
  const std::int64_t L = std::int64_t{1} << state.range(0);
  const auto w = glint::Window::build(L, 0.114 * static_cast<double>(L), kN);
  std::int64_t freq = 12345;
  for (auto _ : state) {
    benchmark::DoNotOptimize(w.band_response(freq));
    freq += 7919;
  }
}
BENCHMARK(BM_BandResponse)->Arg(10)->Arg(13);

void BM_NodeGeneration(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto rep = glint::RngStream::root(7).child(1);
  const auto h = glint::draw_shift(kN, d, rep.child(1));
  const auto z = glint::draw_anchor(kN, d, rep.child(2));
  std::vector<std::int64_t> m(static_cast<std::size_t>(d));
  std::int64_t l = -8192;
  for (auto _ : state) {
    glint::node_into(z, h, l, kN, m);
    benchmark::DoNotOptimize(m.data());
    if (++l > 8192) l = -8192;
  }
}
BENCHMARK(BM_NodeGeneration)->Arg(20)->Arg(500);

void BM_JitteredPoint(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto rep = glint::RngStream::root(7).child(2);
  std::vector<std::int64_t> m(static_cast<std::size_t>(d), 123456789);
  std::vector<double> x(static_cast<std::size_t>(d));
  std::uint64_t tag = 0;
  for (auto _ : state) {
    glint::jittered_point_into(m, kN, rep.child(tag++), x);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_JitteredPoint)->Arg(20)->Arg(500);

void BM_EstimateOnceF1(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const std::int64_t L = std::int64_t{1} << k;
  const auto p = glint::make_params(20, kN, L, 0.114 * static_cast<double>(L), 1, 7);
  const auto w = glint::Window::build(p.L, p.r, p.N);
  const auto f = glint::make_f1(20);
  std::uint64_t run = 0;
  for (auto _ : state) {
    const auto e = glint::estimate_once(f, p, w, glint::StreamKey{7, run++, 0});
    benchmark::DoNotOptimize(e.value);
  }
  state.SetItemsProcessed(state.iterations() * (2 * L + 1));
}
BENCHMARK(BM_EstimateOnceF1)->DenseRange(8, 13, 1);

void BM_EstimateOnceF3Tent(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const std::int64_t L = std::int64_t{1} << k;
  const auto p = glint::make_params(500, kN, L, 0.21 * static_cast<double>(L), 1, 7);
  const auto w = glint::Window::build(p.L, p.r, p.N);
  const auto f = glint::make_f3_tent(500);
  std::uint64_t run = 0;
  for (auto _ : state) {
    const auto e = glint::estimate_once(f, p, w, glint::StreamKey{7, run++, 0});
    benchmark::DoNotOptimize(e.value);
  }
  state.SetItemsProcessed(state.iterations() * (2 * L + 1));
}
BENCHMARK(BM_EstimateOnceF3Tent)->Arg(8)->Arg(10);

void BM_MonteCarloF3(benchmark::State& state) {
  const auto f = glint::make_f3(10);
  std::uint64_t run = 0;
  const std::int64_t M = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(glint::monte_carlo_estimate(f, M, 10, glint::StreamKey{3, run++, 0}));
  }
  state.SetItemsProcessed(state.iterations() * M);
}
BENCHMARK(BM_MonteCarloF3)->Arg(1 << 10)->Arg(1 << 13);

}  // namespace

BENCHMARK_MAIN();
