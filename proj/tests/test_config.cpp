#include <doctest.h>

#include <string>

#include "lwrvsl/io/config.hpp"

using namespace lwrvsl;
using namespace lwrvsl::io;

namespace {

std::string error_of(const std::string& yaml) {
  try {
    validate(parse_config(yaml));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("empty document gives the case study") {
  const RunConfig cfg = parse_config("");
  const Scenario ref = case_study_scenario();
  CHECK(cfg.scenario.params.rho_max == ref.params.rho_max);
  CHECK(cfg.scenario.params.u_max == doctest::Approx(115.0 / 3.6));
  CHECK(cfg.scenario.n_cells == ref.n_cells);
  CHECK(cfg.scenario.q0 == ref.q0);
  CHECK(cfg.scenario.model == Model::linear);
  CHECK_FALSE(cfg.scenario.control_enabled);
  CHECK(cfg.sweep_q0 == case_study_q0_values());
  CHECK(cfg.output_dir == "out");
  CHECK(cfg.formats.csv);
  CHECK(cfg.formats.json);
  CHECK(cfg.formats.svg);
}

TEST_CASE("overrides with units") {
  const RunConfig cfg = parse_config(R"(
traffic:
  rho_max: 150 cars/km
  u_max: 100 km/h
  road_length: 3000 m
grid:
  n_cells: 200
scenario:
  model: nonlinear
  ic_amplitude: 5 cars/km
  bc_length_unit: m
control:
  enabled: true
  q0: 1e-4
output:
  dir: results
  cadence: 1 s
  formats: [csv]
sweep:
  q0: [1e-6, 2e-6]
)");
  CHECK(cfg.scenario.params.rho_max == doctest::Approx(0.15));
  CHECK(cfg.scenario.params.u_max == doctest::Approx(100.0 / 3.6));
  CHECK(cfg.scenario.params.road_length == 3000.0);
  CHECK(cfg.scenario.n_cells == 200);
  CHECK(cfg.scenario.model == Model::nonlinear);
  CHECK(cfg.scenario.ic_amplitude == doctest::Approx(0.005));
  CHECK(cfg.scenario.bc_decay_rate == doctest::Approx(3e-3));
  CHECK(cfg.scenario.control_enabled);
  CHECK(cfg.scenario.q0 == 1e-4);
  CHECK(cfg.output_dir == "results");
  CHECK(cfg.scenario.output_cadence == 1.0);
  CHECK(cfg.formats.csv);
  CHECK_FALSE(cfg.formats.svg);
  CHECK(cfg.sweep_q0 == std::vector<double>{1e-6, 2e-6});
}

TEST_CASE("rejections") {
  CHECK(error_of("traffic:\n  rho_0: 90 cars/km\n").find("congested equilibrium") != std::string::npos);
  CHECK(error_of("control:\n  qq0: 1\n").find("unknown key: control.qq0") != std::string::npos);
  CHECK(error_of("bogus: 1\n").find("unknown key: bogus") != std::string::npos);
  CHECK(error_of("traffic:\n  u_max: 30 m/s\n").find("traffic.u_max") != std::string::npos);
  CHECK(error_of("traffic:\n  road_length: two km\n").find("not a number") != std::string::npos);
  CHECK(error_of("control:\n  r0: 2\n").find("r0") != std::string::npos);
  CHECK(error_of("sweep:\n  q0: []\n").find("sweep.q0") != std::string::npos);
  CHECK(error_of("sweep:\n  q0: [1e-6, -1]\n").find("positive") != std::string::npos);
  CHECK(error_of("scenario:\n  model: quadratic\n").find("scenario.model") != std::string::npos);
  CHECK(error_of("scenario:\n  ic_amplitude: 60 cars/km\n").find("free-flow") != std::string::npos);
  CHECK(error_of("traffic: [1, 2\n").find("malformed") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/config.yaml"), ConfigError);
}

TEST_CASE("format lists") {
  const OutputFormats f = parse_formats("json, svg");
  CHECK_FALSE(f.csv);
  CHECK(f.json);
  CHECK(f.svg);
  CHECK_THROWS_AS(parse_formats("csv,png"), ConfigError);
  CHECK_THROWS_AS(parse_formats(""), ConfigError);
}
