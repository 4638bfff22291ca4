#include <benchmark/benchmark.h>

#include "slag/flow.hpp"

static void BM_CsfStep(benchmark::State& state) {
  slag::FlowOptions fo;
  fo.integrator = state.range(1) ? slag::Integrator::Heun : slag::Integrator::Euler;
  const auto st = slag::make_flow_state(slag::make_circle(1.0, static_cast<std::size_t>(state.range(0))));
  const double dt = slag::max_stable_dt(st, fo);
  for (auto _ : state) benchmark::DoNotOptimize(slag::csf_step(st, dt, fo));
}
BENCHMARK(BM_CsfStep)->ArgsProduct({{128, 512, 2048}, {0, 1}});

static void BM_AdvanceCircle(benchmark::State& state) {
  slag::FlowOptions fo;
  fo.integrator = slag::Integrator::Heun;
  const auto st = slag::make_flow_state(slag::make_circle(1.0, 256));
  for (auto _ : state) benchmark::DoNotOptimize(slag::advance(st, 0.01, fo));
}
BENCHMARK(BM_AdvanceCircle)->Unit(benchmark::kMillisecond);
