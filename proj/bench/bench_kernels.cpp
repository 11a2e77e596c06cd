#include <benchmark/benchmark.h>

#include "pscli/kernels.hpp"
#include "pscli/schemes.hpp"

using namespace pscli;

namespace {

std::vector<double> grid(int points) {
  const std::vector<Interval> set{{2.0, 100.0}};
  return interval_grid(set, points);
}

void radius_curve_serial(benchmark::State& state) {
  const auto fam = a3().linear()->family();
  const auto etas = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::radius_curve(fam, etas));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void radius_curve_parallel(benchmark::State& state) {
  const auto fam = a3().linear()->family();
  const auto etas = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::radius_curve(fam, etas));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = kernels::max_threads();
}

void monte_carlo_serial(benchmark::State& state) {
  const auto s = jacobi_scd();
  const auto q = sdca_dual_quadratic(8, 0.5);
  const std::vector<Vector> init{Vector::Ones(8)};
  for (auto _ : state) benchmark::DoNotOptimize(reference::monte_carlo(s, q, init, 20, static_cast<int>(state.range(0)), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void monte_carlo_parallel(benchmark::State& state) {
  const auto s = jacobi_scd();
  const auto q = sdca_dual_quadratic(8, 0.5);
  const std::vector<Vector> init{Vector::Ones(8)};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::monte_carlo(s, q, init, 20, static_cast<int>(state.range(0)), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = kernels::max_threads();
}

}  // namespace

BENCHMARK(radius_curve_serial)->Arg(1001)->Arg(10001);
BENCHMARK(radius_curve_parallel)->Arg(1001)->Arg(10001);
BENCHMARK(monte_carlo_serial)->Arg(1000)->Arg(10000);
BENCHMARK(monte_carlo_parallel)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
