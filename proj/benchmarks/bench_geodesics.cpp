#include <benchmark/benchmark.h>

#include "fpconvex/geodesics.hpp"
#include "fpconvex/random.hpp"

namespace {

using namespace fpconvex;

void bm_shoot(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FlowSystem sys = FlowSystem::heat(build_grid(n), boltzmann_density());
  Rng rng(5);
  const Eigen::VectorXd a = random_interior_state(n + 1, rng), b = random_interior_state(n + 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(shoot(sys, a, b).action);
}

void bm_minimize_action(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FlowSystem sys = FlowSystem::heat(build_grid(n), boltzmann_density());
  Rng rng(6);
  const Eigen::VectorXd a = random_interior_state(n + 1, rng), b = random_interior_state(n + 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(minimize_action(sys, a, b).action);
}

BENCHMARK(bm_shoot)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_minimize_action)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
