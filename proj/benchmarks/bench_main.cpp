#include <benchmark/benchmark.h>

#include "gelsolve/characteristics.hpp"
#include "gelsolve/models.hpp"
#include "gelsolve/oracle.hpp"
#include "gelsolve/power_series.hpp"
#include "gelsolve/series.hpp"

using namespace gelsolve;

namespace {

const ArmLaw kMu{{0, 0.5}, {1, 0.25}, {3, 0.25}};

void BM_EllSmoluchowski(benchmark::State& state) {
  const auto measure = MassMeasure::exponential();
  double t = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ell_smolu_log(t, measure));
    t = t < 50.0 ? t * 1.1 : 1.0;
  }
}
BENCHMARK(BM_EllSmoluchowski);

void BM_LFlory(benchmark::State& state) {
  const auto measure = MassMeasure::discrete({{1.0, 0.5}, {2.0, 0.25}});
  double t = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(l_flory(t, measure));
    t = t < 10.0 ? t + 0.37 : 1.0;
  }
}
BENCHMARK(BM_LFlory);

void BM_SeriesRevert(benchmark::State& state) {
  std::vector<double> c(static_cast<std::size_t>(state.range(0)) + 1, 0.0);
  c[1] = 1.0;
  for (std::size_t i = 2; i < c.size(); ++i) c[i] = 1.0 / static_cast<double>(i * i);
  const PowerSeries phi(c);
  for (auto _ : state) benchmark::DoNotOptimize(ps_revert(phi));
}
BENCHMARK(BM_SeriesRevert)->Arg(16)->Arg(64)->Arg(256);

void BM_Concentrations(benchmark::State& state) {
  const auto measure = MassMeasure::monodisperse();
  for (auto _ : state) benchmark::DoNotOptimize(concentrations(Model::Flory, measure, 2.0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Concentrations)->Arg(30)->Arg(120);

void BM_OracleIntegrate(benchmark::State& state) {
  const auto init = oracle_initial(MassMeasure::monodisperse(), static_cast<int>(state.range(0)));
  const std::vector<double> grid{0.5};
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate(Model::Flory, Flavor::GelInteracting, init, grid, 1e-2));
}
BENCHMARK(BM_OracleIntegrate)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_AlphaBetaTrajectory(benchmark::State& state) {
  const auto arms = ArmMeasure::monodisperse(kMu);
  SolverConfig cfg;
  cfg.ode_dt = 1e-3;
  for (auto _ : state) benchmark::DoNotOptimize(AlphaBetaTrajectory(arms, 20.0, cfg).beta_limit());
}
BENCHMARK(BM_AlphaBetaTrajectory)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
