#include <benchmark/benchmark.h>

#include <vector>

#include "cellboard/criteria.hpp"
#include "cellboard/finite_gibbs.hpp"
#include "cellboard/sweep.hpp"

using namespace cellboard;

namespace {

void BM_DpValue(benchmark::State& state) {
  double T = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dp_p({1.0, 2.0, T}));
    T = T < 7.0 ? T + 1e-3 : 0.5;
  }
}
BENCHMARK(BM_DpValue);

void BM_DcCurve(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(dc_curve(1.0, th_field_grid(), {th_temperature_grid(), 1e-6, 1}));
  }
}
BENCHMARK(BM_DcCurve)->Unit(benchmark::kMillisecond);

void BM_Marginals(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto window = build_window(n);
  const std::vector<double> field(n * n, 0.7);
  const auto tables = build_energy_tables(window, field, 1.0);
  const BoundaryConfig mask = (BoundaryConfig{1} << (4 * n)) - 1;
  BoundaryConfig eta = 0;
  std::vector<double> scratch(window.interior_configs());
  std::vector<double> out(n * n);
  for (auto _ : state) {
    marginals_plus_into(tables, eta, 2.0, scratch, out);
    benchmark::DoNotOptimize(out.data());
    eta = (eta * 2654435761U + 1) & mask;
  }
}
BENCHMARK(BM_Marginals)->DenseRange(1, 3);

// Whole-placement gamma, low temperature (no early exit) and near the
// threshold where gamma_until can stop early.
void BM_DsGamma(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DsEvaluator ds(n, CellSize::finite(2), CellSize::finite(2));
  for (auto _ : state) benchmark::DoNotOptimize(ds.gamma({1.0, 1.5, 0.8}));
}
BENCHMARK(BM_DsGamma)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_DsGammaUntil(benchmark::State& state) {
  const DsEvaluator ds(3, CellSize::finite(2), CellSize::finite(2));
  for (auto _ : state) benchmark::DoNotOptimize(ds.gamma_until({1.0, 1.5, 0.8}, 1.0));
}
BENCHMARK(BM_DsGammaUntil)->Unit(benchmark::kMillisecond);

void BM_DsHLineCoarse(benchmark::State& state) {
  const Grid1D T_grid{0.05, 0.05, 20};
  const Grid1D h_grid{0.25, 0.25, 18};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ds_h_line(2, 1.0, CellSize::finite(1), CellSize::finite(1), T_grid,
                                       h_grid, {}));
  }
}
BENCHMARK(BM_DsHLineCoarse)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
