#include <benchmark/benchmark.h>

#include <cmath>

#include "mcpiso/density.hpp"
#include "mcpiso/search.hpp"
#include "mcpiso/space.hpp"

using namespace mcpiso;

namespace {

search::SearchConfig sharp_config(const space::SharpSpace& s, std::size_t grid) {
  search::SearchConfig cfg;
  cfg.grid_points = grid;
  cfg.max_components = 2;
  cfg.target_volume = 1.0;
  cfg.window = 2.0 * s.threshold;
  cfg.volume_tolerance = 0.02;
  return cfg;
}

void BM_SearchParallel(benchmark::State& state) {
  const auto s = space::sharp_space(0.5, 1.0, RealDimension(2.0));
  const auto cfg = sharp_config(s, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(search::brute_force_profile(s.space, cfg).content);
}

void BM_SearchSerialReference(benchmark::State& state) {
  const auto s = space::sharp_space(0.5, 1.0, RealDimension(2.0));
  const auto cfg = sharp_config(s, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(search::detail::brute_force_profile_serial(s.space, cfg).content);
}

void BM_SweepParallel(benchmark::State& state) {
  const Density h = Density::monomial(1.0, 1.5);
  const auto grid = detail::sample_grid(h, 0.0, 3.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(detail::sweep_pairs(h, grid, 3.0, 3.0, 1e-12));
}

void BM_SweepSerial(benchmark::State& state) {
  const Density h = Density::monomial(1.0, 1.5);
  const auto grid = detail::sample_grid(h, 0.0, 3.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        detail::sweep_pairs_serial(h, grid, 3.0, 3.0, 1e-12));
}

}  // namespace

BENCHMARK(BM_SearchParallel)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchSerialReference)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
