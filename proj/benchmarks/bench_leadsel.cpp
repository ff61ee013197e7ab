#include <benchmark/benchmark.h>

#include "leadsel/leadsel.hpp"

using namespace leadsel;

static void BM_ComputeKernels(benchmark::State& state) {
  const Graph g = erdos_renyi(static_cast<int>(state.range(0)), 0.2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(compute_kernels(g));
}
BENCHMARK(BM_ComputeKernels)->Arg(16)->Arg(64)->Arg(256);

static void BM_JointCentrality(benchmark::State& state) {
  const Graph g = erdos_renyi(static_cast<int>(state.range(0)), 0.2, 1);
  const GraphKernels k = compute_kernels(g);
  const std::vector<NodeId> set{0, 3, 7};
  for (auto _ : state) benchmark::DoNotOptimize(joint_centrality(k, set, 0).rho);
}
BENCHMARK(BM_JointCentrality)->Arg(16)->Arg(64)->Arg(256);

static void BM_TraceOracle(benchmark::State& state) {
  const Graph g = erdos_renyi(static_cast<int>(state.range(0)), 0.2, 1);
  const ErrorOracle oracle(g);
  const std::vector<NodeId> set{0, 3, 7};
  for (auto _ : state) benchmark::DoNotOptimize(oracle.noise_free_total(set));
}
BENCHMARK(BM_TraceOracle)->Arg(16)->Arg(64)->Arg(256);

static void BM_ExhaustiveSelect(benchmark::State& state) {
  const Graph g = erdos_renyi(static_cast<int>(state.range(0)), 0.3, 2);
  const GraphKernels k = compute_kernels(g);
  SelectionOptions opts;
  opts.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exhaustive_select(g, k, 3, LeaderMode::noise_free(), opts).rho);
  }
}
BENCHMARK(BM_ExhaustiveSelect)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_GreedySelect(benchmark::State& state) {
  const Graph g = erdos_renyi(static_cast<int>(state.range(0)), 0.3, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_select(g, 3, LeaderMode::noise_free()).rho);
  }
}
BENCHMARK(BM_GreedySelect)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_Simulate(benchmark::State& state) {
  const Graph g = erdos_renyi(20, 0.3, 3);
  SimConfig cfg;
  cfg.steps = 100'000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(g, LeaderSet({0, 5}), cfg).empirical_total_error);
  }
}
BENCHMARK(BM_Simulate)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
