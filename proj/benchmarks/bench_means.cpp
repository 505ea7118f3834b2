#include <benchmark/benchmark.h>

#include "fpconvex/means.hpp"
#include "fpconvex/random.hpp"

namespace {

using namespace fpconvex;

void run_partials(benchmark::State& state, const MeanFunction& mean) {
  Rng rng(1);
  std::vector<std::pair<double, double>> points(1024);
  for (auto& p : points) p = {rng.log_uniform(0.05, 20.0), rng.log_uniform(0.05, 20.0)};
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [s, t] = points[i++ & 1023];
    benchmark::DoNotOptimize(mean.partials(s, t));
  }
}

void bm_log_mean_partials(benchmark::State& state) { run_partials(state, MeanFunction::logarithmic()); }
void bm_power_mean_partials(benchmark::State& state) { run_partials(state, MeanFunction::power(1.5)); }
void bm_f_mean_partials(benchmark::State& state) {
  run_partials(state, MeanFunction::f_mean(power_function(1.5)));
}

BENCHMARK(bm_log_mean_partials);
BENCHMARK(bm_power_mean_partials);
BENCHMARK(bm_f_mean_partials);

}  // namespace
