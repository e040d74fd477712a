// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include "montmort/rank_derangement.hpp"
#include "montmort/simulate.hpp"

using namespace montmort;

namespace {

void BM_ProfileSumSerial(benchmark::State& state) {
  const DeckSpec spec{static_cast<unsigned>(state.range(0)), 4};
  for (auto _ : state) benchmark::DoNotOptimize(rank_derangement_count_serial(spec));
}

void BM_ProfileSumOmp(benchmark::State& state) {
  const DeckSpec spec{static_cast<unsigned>(state.range(0)), 4};
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(rank_derangement_count_omp(spec, threads));
}

void BM_ProfileSumPolynomial(benchmark::State& state) {
  const DeckSpec spec{static_cast<unsigned>(state.range(0)), 4};
  for (auto _ : state) benchmark::DoNotOptimize(rank_derangement_count_polynomial(spec));
}

SimConfig sim_config(std::uint64_t trials, int threads) {
  SimConfig c;
  c.seed = 1;
  c.trials = trials;
  c.spec = {13, 4};
  c.threads = threads;
  return c;
}

void BM_EstimateSerial(benchmark::State& state) {
  const Game game = static_cast<Game>(state.range(0));
  const SimConfig c = sim_config(20000, 1);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_serial(c, game));
  state.SetItemsProcessed(state.iterations() * c.trials);
}

void BM_EstimateOmp(benchmark::State& state) {
  const Game game = static_cast<Game>(state.range(0));
  const SimConfig c = sim_config(20000, static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(estimate(c, game));
  state.SetItemsProcessed(state.iterations() * c.trials);
}

}  // namespace

BENCHMARK(BM_ProfileSumSerial)->Arg(13)->Arg(26)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProfileSumOmp)
    ->ArgsProduct({{13, 26, 50}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProfileSumPolynomial)->Arg(13)->Arg(26)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateSerial)
    ->Arg(static_cast<int>(Game::Frustration))
    ->Arg(static_cast<int>(Game::Treize))
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateOmp)
    ->ArgsProduct({{static_cast<int>(Game::Frustration), static_cast<int>(Game::Treize)},
                   {1, 2, 4}})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
