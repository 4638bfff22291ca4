#include <benchmark/benchmark.h>

#include <cmath>

#include "slag/bordism.hpp"
#include "slag/solomon.hpp"

namespace {

slag::GradedCurve graph(double t, int k, std::size_t n) {
  slag::GraphOptions go;
  go.samples = n;
  return slag::make_graph_curve([=](double x) { return t * std::sin(k * x); }, 0.0, go,
                                [=](double x) { return t * k * std::cos(k * x); });
}

}  // namespace

static void BM_Bordism(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto L = graph(0.5, 1, n), L0 = graph(0.2, 3, n);
  for (auto _ : state) benchmark::DoNotOptimize(slag::BordismChain::build(L, L0).integral_p());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Bordism)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

static void BM_SolomonFunctional(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto L = graph(0.3, 1, n), L0 = graph(0.0, 1, n);
  for (auto _ : state) benchmark::DoNotOptimize(slag::solomon_functional(L, L0));
}
BENCHMARK(BM_SolomonFunctional)->Arg(1024)->Arg(4096);
