// Serial reference kernels against their OpenMP counterparts.
// Thread count for the parallel variants is the benchmark argument.

#include <benchmark/benchmark.h>

#include "kneserlab/kneser.hpp"
#include "kneserlab/randomsim.hpp"

using namespace kneserlab;

namespace {

const Family& big_family() {
  static const Family f = Family::full(14, 4);  // 1001 sets
  return f;
}

const KneserTemplate& kneser_73() {
  static const KneserTemplate base(KneserParams::make(7, 3));
  return base;
}

void BM_DisjointPairsSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::disjoint_pairs(big_family()));
}

void BM_DisjointPairsParallel(benchmark::State& state) {
  const Threads threads{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(disjoint_pairs(big_family(), threads));
}

ScanConfig scan_config(int threads) {
  ScanConfig config;
  config.trials = 200;
  config.seed = 1;
  config.threads = Threads{threads};
  return config;
}

void BM_ProbAlphaSerial(benchmark::State& state) {
  const ScanConfig config = scan_config(1);
  for (auto _ : state) benchmark::DoNotOptimize(serial::prob_alpha_equals_n(kneser_73(), 0.6, config).successes);
}

void BM_ProbAlphaParallel(benchmark::State& state) {
  const ScanConfig config = scan_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(prob_alpha_equals_n(kneser_73(), 0.6, config).successes);
}

void BM_SimulateYSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::simulate_y(kneser_73(), 0.5, 2000, 1).observed_mean);
}

void BM_SimulateYParallel(benchmark::State& state) {
  const Threads threads{static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(simulate_y(kneser_73(), 0.5, 2000, 1, threads).observed_mean);
}

}  // namespace

BENCHMARK(BM_DisjointPairsSerial);
BENCHMARK(BM_DisjointPairsParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime();
BENCHMARK(BM_ProbAlphaSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProbAlphaParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateYSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateYParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
