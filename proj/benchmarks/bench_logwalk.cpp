#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "logwalk/logwalk.hpp"

using namespace logwalk;

namespace {

WeightedGraph bench_graph(std::size_t n) {
  RandomGraphOptions opts;
  opts.edge_probability = std::min(1.0, 8.0 / static_cast<double>(n));
  return erdos_renyi(n, 7, opts);
}

void BM_ScanStep(benchmark::State& state) {
  const auto g = bench_graph(static_cast<std::size_t>(state.range(0)));
  TrialRng rng(1);
  Vertex v = 0;
  for (auto _ : state) {
    v = walk_step(g, v, rng);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ScanStep)->Arg(64)->Arg(1024);

void BM_AliasStep(benchmark::State& state) {
  const auto g = bench_graph(static_cast<std::size_t>(state.range(0)));
  const AliasWalker walker(g);
  TrialRng rng(1);
  Vertex v = 0;
  for (auto _ : state) {
    v = walker.step(v, rng);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AliasStep)->Arg(64)->Arg(1024);

void BM_PositionTallies(benchmark::State& state) {
  const auto g = cycle_graph(32);
  const AliasWalker walker(g);
  const auto steps = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto counts = position_tallies(walker, 0, steps, 10000, RandomSource(3), 1);
    benchmark::DoNotOptimize(counts.data());
  }
  state.SetItemsProcessed(state.iterations() * 10000 * static_cast<std::int64_t>(steps));
}
BENCHMARK(BM_PositionTallies)->Arg(16)->Arg(256);

void BM_SeriesWeights(benchmark::State& state) {
  const auto params = series_params(0.1, 1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto w = poisson_series_weights(params);
    benchmark::DoNotOptimize(w.data());
  }
}
BENCHMARK(BM_SeriesWeights)->Arg(10)->Arg(100);

void BM_PracticalSolve(benchmark::State& state) {
  const auto g = cycle_graph(static_cast<std::size_t>(state.range(0)));
  std::vector<double> b(g.size(), 0.0);
  b[0] = 1.0 / std::sqrt(2.0);
  b[1] = -b[0];
  SolveOptions options;
  options.epsilon = 0.2;
  options.lambda = lambda2_exact(g);
  options.exec.budget.walk_samples = 10000;
  for (auto _ : state) {
    auto r = solve(g, b, options, NormTarget::entrywise, RandomSource(5));
    benchmark::DoNotOptimize(r.x.data());
  }
}
BENCHMARK(BM_PracticalSolve)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_EstimateNorm(benchmark::State& state) {
  const auto g = complete_graph(16);
  const auto v = sigma_vector(g, 0, 1);
  ExecutionOptions exec;
  exec.budget.walk_samples = 20000;
  for (auto _ : state) {
    auto r = estimate_norm(g, static_cast<std::uint64_t>(state.range(0)), v, 0.1, 0.1, exec,
                           RandomSource(9));
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_EstimateNorm)->Arg(2)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_JacobiSpectrum(benchmark::State& state) {
  const auto g = bench_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto spec = spectrum(g);
    benchmark::DoNotOptimize(spec.values.data());
  }
}
BENCHMARK(BM_JacobiSpectrum)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
