#include <benchmark/benchmark.h>

#include "fpconvex/convexity.hpp"
#include "fpconvex/random.hpp"

namespace {

using namespace fpconvex;

void bm_certify_fp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FlowSystem sys = FlowSystem::fokker_planck(build_grid(n), Potential::quadratic(1.0), power_function(0.75));
  Rng rng(2);
  const Eigen::VectorXd rho = random_interior_state(n + 1, rng);
  for (auto _ : state) {
    const ConvexityReport r = certify(assemble_fp_tilde_m(sys, rho), edge_weights(sys, rho), lambda_h(sys, rho));
    benchmark::DoNotOptimize(r.smallest_eigenvalue);
  }
}

void bm_dense_tilde_m(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FlowSystem sys = FlowSystem::fokker_planck(build_grid(n), Potential::quadratic(1.0), power_function(0.75));
  Rng rng(3);
  const Eigen::VectorXd rho = random_interior_state(n + 1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(dense_tilde_m(sys, rho));
}

BENCHMARK(bm_certify_fp)->Arg(16)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(bm_dense_tilde_m)->Arg(16)->Arg(64);

}  // namespace
