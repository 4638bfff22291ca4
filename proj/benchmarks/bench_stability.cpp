#include <benchmark/benchmark.h>

#include "slag/random.hpp"
#include "slag/stability.hpp"

static void BM_HullFiltration(benchmark::State& state) {
  slag::Pcg32 rng(1, 1);
  const auto chain = slag::random_chain(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(slag::hn_filtration(chain));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HullFiltration)->RangeMultiplier(4)->Range(8, 8 << 10)->Complexity();

static void BM_BruteForce(benchmark::State& state) {
  slag::Pcg32 rng(1, 1);
  const auto chain = slag::random_chain(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(slag::brute_force_hn(chain));
}
BENCHMARK(BM_BruteForce)->DenseRange(2, 10, 2);
