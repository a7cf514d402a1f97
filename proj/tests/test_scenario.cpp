#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lwrvsl/scenario.hpp"

using namespace lwrvsl;

namespace {

Scenario quiet_scenario(Model model) {
  Scenario sc = case_study_scenario(model);
  sc.ic_amplitude = 0.0;
  sc.bc_osc_amplitude = 0.0;
  sc.bc_growth_rate = 0.0;
  return sc;
}

}  // namespace

TEST_CASE("initial condition") {
  const Scenario sc = case_study_scenario();
  CHECK(initial_condition(0.0, sc) == 0.05);
  CHECK(initial_condition(sc.params.road_length, sc) == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(initial_condition(sc.params.road_length / 2, sc) == doctest::Approx(0.06).epsilon(1e-14));
}

TEST_CASE("upstream boundary") {
  const Scenario sc = case_study_scenario();
  CHECK(upstream_boundary(0.0, sc) == 0.05);
  CHECK(upstream_boundary(20.0, sc) == doctest::Approx(0.05 + sc.bc_growth_rate * 20).epsilon(1e-13));
  CHECK(upstream_boundary(120.0, sc) == doctest::Approx(0.065).epsilon(1e-13));
  CHECK(sc.bc_growth_rate == doctest::Approx(0.125e-3));
  CHECK(sc.bc_decay_rate == doctest::Approx(2e-6));

  Scenario meters = sc;
  set_boundary_reading(meters, BoundaryLengthUnit::meters);
  CHECK(meters.bc_decay_rate == doctest::Approx(2e-3));
  CHECK(meters.bc_growth_rate == doctest::Approx(1.25e-7));
}

TEST_CASE("total cars") {
  const TrafficParams p = default_params();
  const Grid1D g = make_grid(p.road_length, 400);
  CHECK(total_cars({std::vector<double>(400, 0.05), FieldKind::absolute, 0}, g, p) == doctest::Approx(100.0));
  CHECK(total_cars({std::vector<double>(400, 0.0), FieldKind::perturbation, 0}, g, p) == doctest::Approx(100.0));
  CHECK(total_cars({std::vector<double>(400, 0.0), FieldKind::absolute, 0}, g, p) == 0.0);
  CHECK(target_total_cars(p) == doctest::Approx(100.0));

  const Scenario sc = case_study_scenario();
  DensityField ic{std::vector<double>(400), FieldKind::absolute, 0};
  for (std::size_t i = 0; i < 400; ++i) ic.values[i] = initial_condition(g.cell_centers()[i], sc);
  // Analytic integral: 100 + 40 / pi.
  CHECK(total_cars(ic, g, p) == doctest::Approx(100.0 + 40.0 / std::numbers::pi).epsilon(1e-5));
}

TEST_CASE("scenario validation") {
  Scenario sc = case_study_scenario();
  CHECK_NOTHROW(validate(sc));
  sc.ic_amplitude = 0.05;
  CHECK_THROWS_AS(validate(sc), std::invalid_argument);
  sc = case_study_scenario();
  sc.bc_growth_rate = 1e-3;
  CHECK_THROWS_AS(validate(sc), std::invalid_argument);
  sc = case_study_scenario();
  sc.r0 = 2.0;
  CHECK_THROWS_AS(validate(sc), std::invalid_argument);
  sc = case_study_scenario();
  sc.clamp = {1.2, 2.0};
  CHECK_THROWS_AS(validate(sc), std::invalid_argument);
  sc = case_study_scenario();
  sc.output_cadence = 0.0;
  CHECK_THROWS_AS(validate(sc), std::invalid_argument);
}

TEST_CASE("fixed time step divides the output cadence") {
  const Scenario sc = case_study_scenario();
  const double dt = fixed_time_step(sc);
  CHECK(dt <= sc.cfl * 5.0 / (sc.clamp.b_max * sc.params.u_max));
  const double per_output = sc.output_cadence / dt;
  CHECK(std::abs(per_output - std::round(per_output)) < 1e-9);
}

TEST_CASE("equilibrium run stays at the target") {
  for (Model model : {Model::linear, Model::nonlinear}) {
    Scenario sc = quiet_scenario(model);
    sc.control_enabled = true;
    const SimulationHistory h = run_simulation(sc);
    for (double n : h.total_cars_series) CHECK(n == doctest::Approx(100.0).epsilon(1e-12));
    for (const auto& u : h.control_frames) {
      for (double v : u) CHECK(v == 0.0);
    }
    for (const auto& b : h.vsl_frames) {
      for (double v : b) CHECK(v == sc.params.b_0);
    }
  }
}

TEST_CASE("baseline run") {
  const Scenario sc = case_study_scenario(Model::linear, false);
  const SimulationHistory h = run_simulation(sc);
  const std::size_t frames = h.times.size();
  CHECK(frames == 241);
  CHECK(h.density_frames.size() == frames);
  CHECK(h.speed_frames.size() == frames);
  CHECK(h.vsl_frames.size() == frames);
  CHECK(h.control_frames.size() == frames);
  CHECK(h.total_cars_series.size() == frames);
  CHECK(h.times.back() == 120.0);
  CHECK(h.total_cars_series.front() == doctest::Approx(112.73).epsilon(1e-4));
  CHECK(h.total_cars_series.front() > 100.0);
  CHECK(h.max_density < critical_density(sc.params));
}

TEST_CASE("runs are deterministic and control-off runs ignore q0") {
  Scenario a = case_study_scenario(Model::nonlinear, true, 5e-5);
  const SimulationHistory h1 = run_simulation(a);
  const SimulationHistory h2 = run_simulation(a);
  CHECK(h1.total_cars_series == h2.total_cars_series);
  CHECK(h1.density_frames.back().values == h2.density_frames.back().values);
  CHECK(h1.vsl_frames == h2.vsl_frames);

  Scenario off1 = case_study_scenario(Model::nonlinear, false, 1e-6);
  Scenario off2 = case_study_scenario(Model::nonlinear, false, 5e-4);
  const SimulationHistory o1 = run_simulation(off1);
  const SimulationHistory o2 = run_simulation(off2);
  CHECK(o1.total_cars_series == o2.total_cars_series);
  CHECK(o1.density_frames.back().values == o2.density_frames.back().values);
}

TEST_CASE("strong control on the linear plant approaches the target") {
  const Scenario sc = case_study_scenario(Model::linear, true, 5e-4);
  const RunSummary s = summarize(run_simulation(sc), sc);
  CHECK(s.final_total_cars < 105.0);
  CHECK(s.final_total_cars > 95.0);
  REQUIRE(s.time_to_target.has_value());
}

TEST_CASE("summarize: time to target requires staying inside the band") {
  SimulationHistory h;
  h.times = {0, 1, 2, 3, 4};
  h.total_cars_series = {112, 104, 106, 103, 101};
  Scenario sc = case_study_scenario();
  RunSummary s = summarize(h, sc);
  REQUIRE(s.time_to_target.has_value());
  CHECK(*s.time_to_target == 3.0);

  h.total_cars_series = {112, 104, 103, 103, 106};
  CHECK_FALSE(summarize(h, sc).time_to_target.has_value());
}

TEST_CASE("sweep") {
  const Scenario sc = case_study_scenario(Model::linear, true);
  const auto members = sweep_q0(sc, {1e-6, 1e-5, 5e-5, 5e-4});
  REQUIRE(members.size() == 4);
  for (std::size_t i = 0; i + 1 < members.size(); ++i) {
    REQUIRE(members[i].ok());
    CHECK(members[i].summary->final_total_cars > members[i + 1].summary->final_total_cars);
  }

  Scenario single = sc;
  single.q0 = 5e-5;
  const auto one = sweep_q0(sc, {5e-5});
  CHECK(one.front().history->total_cars_series == run_simulation(single).total_cars_series);

  const auto mixed = sweep_q0(sc, {-1.0, 5e-5});
  CHECK_FALSE(mixed[0].ok());
  CHECK(mixed[0].error.find("q0 = -1") != std::string::npos);
  CHECK(mixed[1].ok());

  CHECK_THROWS_AS(sweep_q0(sc, {}), std::invalid_argument);
}
