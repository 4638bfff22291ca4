#include <benchmark/benchmark.h>

#include "slag/lawlor.hpp"

static void BM_AnglesAndArea(benchmark::State& state) {
  std::vector<double> a(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = 0.3 + 0.7 * double(i);
  for (auto _ : state) benchmark::DoNotOptimize(slag::angles_and_area(a));
}
BENCHMARK(BM_AnglesAndArea)->DenseRange(3, 6);

static void BM_Invert(benchmark::State& state) {
  const auto neck = slag::angles_and_area({0.4, 1.7, 3.2});
  for (auto _ : state) benchmark::DoNotOptimize(slag::invert(neck.phi, neck.area));
}
BENCHMARK(BM_Invert)->Unit(benchmark::kMillisecond);

static void BM_PotentialGap(benchmark::State& state) {
  const slag::NeckProfile prof(slag::angles_and_area({0.4, 1.7, 3.2}));
  for (auto _ : state) benchmark::DoNotOptimize(slag::potential_gap(prof));
}
BENCHMARK(BM_PotentialGap)->Unit(benchmark::kMillisecond);
