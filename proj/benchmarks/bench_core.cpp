#include <benchmark/benchmark.h>

#include <vector>

#include "lwrvsl/riccati.hpp"
#include "lwrvsl/scenario.hpp"
#include "lwrvsl/solvers.hpp"

using namespace lwrvsl;

static void BM_PhiClosedForm(benchmark::State& state) {
  const RiccatiProblem p = assemble_problem(default_params(), 5e-5);
  double z = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi_closed_form(z, p));
    z = z < p.length ? z + 1.0 : 0.0;
  }
}
BENCHMARK(BM_PhiClosedForm);

static void BM_StepLinear(benchmark::State& state) {
  const TrafficParams params = default_params();
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid1D grid = make_grid(params.road_length, n);
  DensityField f{std::vector<double>(n, 1e-3), FieldKind::perturbation, 0.0};
  const std::vector<double> u(n + 1, 1e-6);
  const double dt = 0.5 * grid.dz() / linear_wave_speed(params);
  for (auto _ : state) {
    auto r = step_linear(f, u, grid, params, apply_boundary(f, 0.051, params), dt);
    benchmark::DoNotOptimize(r.field.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_StepLinear)->Arg(400)->Arg(4000);

static void BM_StepNonlinear(benchmark::State& state) {
  const TrafficParams params = default_params();
  const auto n = static_cast<std::size_t>(state.range(0));
  const Grid1D grid = make_grid(params.road_length, n);
  DensityField f{std::vector<double>(n, 0.055), FieldKind::absolute, 0.0};
  const std::vector<double> b(n + 1, 1.1);
  const double dt = 0.5 * grid.dz() / params.u_max;
  for (auto _ : state) {
    auto r = step_nonlinear(f, b, grid, params, apply_boundary(f, 0.06, params), dt);
    benchmark::DoNotOptimize(r.field.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_StepNonlinear)->Arg(400)->Arg(4000);

static void BM_ControlledRun(benchmark::State& state) {
  const Scenario sc = case_study_scenario(state.range(0) == 0 ? Model::linear : Model::nonlinear, true, 5e-5);
  for (auto _ : state) {
    auto h = run_simulation(sc);
    benchmark::DoNotOptimize(h.total_cars_series.data());
  }
}
BENCHMARK(BM_ControlledRun)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
