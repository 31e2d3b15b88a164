// Serial vs OpenMP run of the exhaustive MBCMBP oracle.
#include <benchmark/benchmark.h>

#include "blocker/generators.hpp"
#include "blocker/oracles.hpp"

using namespace blocker;

namespace {

MbcmbpInstance instance(int size_v, int parts) {
  SplitMix64 rng(42);
  MbcmbpInstance inst{gen_bipartite(parts * 2, size_v, 60, rng), {}};
  inst.partition_u.resize(parts);
  for (int u = 0; u < inst.g.size_u(); ++u) inst.partition_u[u % parts].push_back(u);
  return inst;
}

void run(benchmark::State& state, Parallelism par) {
  MbcmbpInstance inst = instance(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_mbcmbp(inst, {}, par).z);
}

void BM_MbcmbpOracleSerial(benchmark::State& state) { run(state, Parallelism::kSerial); }
void BM_MbcmbpOracleOpenMp(benchmark::State& state) { run(state, Parallelism::kOpenMp); }

}  // namespace

BENCHMARK(BM_MbcmbpOracleSerial)->Args({7, 2})->Args({8, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MbcmbpOracleOpenMp)->Args({7, 2})->Args({8, 3})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
