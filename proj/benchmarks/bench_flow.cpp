#include <benchmark/benchmark.h>

#include "fpconvex/flow.hpp"
#include "fpconvex/random.hpp"

namespace {

using namespace fpconvex;

void bm_integrate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FlowSystem sys = FlowSystem::fokker_planck(build_grid(n), Potential::quadratic(1.0), power_function(0.5));
  Rng rng(4);
  const Eigen::VectorXd rho0 = random_interior_state(n + 1, rng);
  FlowOptions opts;
  opts.samples = 11;
  for (auto _ : state) benchmark::DoNotOptimize(integrate(sys, rho0, 0.1, opts).accepted_steps);
}

BENCHMARK(bm_integrate)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
