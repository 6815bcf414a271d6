#include <benchmark/benchmark.h>

#include "slx/eigen_solver.hpp"
#include "slx/families.hpp"
#include "slx/sobolev.hpp"

namespace {

slx::Potential sample_potential(int cells) {
  std::vector<double> heights;
  for (int i = 0; i < cells; ++i) heights.push_back(1.0 + 7.0 * ((i * 37) % 11) / 11.0);
  return slx::Potential(slx::StepPotential::uniform(heights), {{0.37, 1.5}});
}

void BM_ThetaEnd(benchmark::State& state) {
  const auto q = sample_potential(static_cast<int>(state.range(0)));
  const slx::RobinBC bc(1.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(slx::theta_end(q, bc, 3.0));
}
BENCHMARK(BM_ThetaEnd)->Arg(4)->Arg(64)->Arg(1024);

void BM_Lambda1(benchmark::State& state) {
  const auto q = sample_potential(static_cast<int>(state.range(0)));
  const slx::RobinBC bc(1.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(slx::lambda1(q, bc).lambda1);
}
BENCHMARK(BM_Lambda1)->Arg(4)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Lambda1Spike(benchmark::State& state) {
  const auto q = slx::Potential(slx::statement1_family({0.5, state.range(0)}, 0.5).q);
  const slx::RobinBC bc(1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(slx::lambda1(q, bc).lambda1);
}
BENCHMARK(BM_Lambda1Spike)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Lambda1Fd(benchmark::State& state) {
  const auto q = sample_potential(16);
  const slx::RobinBC bc(1.0, 2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(slx::lambda1_fd(q, bc, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Lambda1Fd)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_WMinus1Norm(benchmark::State& state) {
  const auto f = slx::SignedMeasure::from(slx::statement1_family({0.5, 1000}, 0.5).q) -
                 slx::SignedMeasure::point_mass(0.5);
  for (auto _ : state)
    benchmark::DoNotOptimize(slx::wminus1_norm(f, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_WMinus1Norm)->RangeMultiplier(4)->Range(256, 1 << 14);

}  // namespace

BENCHMARK_MAIN();
