#include <benchmark/benchmark.h>

#include <cmath>

#include "hubatom/oracle.hpp"
#include "hubatom/parallel.hpp"
#include "hubatom/quad.hpp"
#include "hubatom/subtlety.hpp"

using namespace hubatom;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::parallel : Execution::serial;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) ? "openmp x" + std::to_string(max_threads()) : "serial");
}

// 64^3 tensor Gauss-Hermite sum of the spin-1/2 trace.
void BM_SpinTensorQuadrature(benchmark::State& state) {
  const auto exec = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(spin_hs_counterexample(1.0, 64, exec));
  label(state);
  state.SetItemsProcessed(state.iterations() * 64 * 64 * 64);
}
BENCHMARK(BM_SpinTensorQuadrature)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Thermal sums over a 4-level boson basis with 16 quanta per level (~65k states).
void BM_OracleBasis(benchmark::State& state) {
  ModelSpec m;
  m.statistics = Statistics::boson;
  m.levels = {{"a", 0.0}, {"b", 0.1}, {"c", 0.2}, {"d", 0.3}};
  m.U = 0.2;
  m.beta = 1.0;
  m.mu = -1.0;
  TruncationPolicy t;
  t.n_max_per_level = 15;
  t.n_max = 60;
  const auto exec = mode(state);
  for (auto _ : state) {
    const ExactOracle ed(m, t, exec);
    benchmark::DoNotOptimize(ed.occupation(0));
    benchmark::DoNotOptimize(ed.lesser_time(1, 2.0));
  }
  label(state);
}
BENCHMARK(BM_OracleBasis)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Node doubling to 4096 points on an oscillatory integrand.
void BM_AdaptiveAverage(benchmark::State& state) {
  AdaptiveOptions opts;
  opts.exec = mode(state);
  auto f = [](double x) { return std::polar(1.0 / (1.0 + 0.1 * x * x), 3.0 * x); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(adaptive_gaussian_average(f, 1.0, 1e-13, opts));
  }
  label(state);
}
BENCHMARK(BM_AdaptiveAverage)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
