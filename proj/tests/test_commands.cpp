#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "lwrvsl/io/commands.hpp"
#include "lwrvsl/io/csv.hpp"

using namespace lwrvsl;
using namespace lwrvsl::io;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("lwrvsl_test_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Table load(const fs::path& p) {
  std::ifstream in(p);
  return read_csv(in);
}

RunConfig small_config(const fs::path& out) {
  RunConfig cfg;
  cfg.scenario.n_cells = 100;
  cfg.output_dir = out;
  return cfg;
}

}  // namespace

TEST_CASE("simulate writes identical artifacts on repeated runs") {
  TempDir a, b;
  std::ostringstream log;
  RunConfig cfg = small_config(a.path());
  cfg.scenario.model = Model::nonlinear;
  cfg.scenario.control_enabled = true;
  REQUIRE(cmd_simulate(cfg, log) == kSuccess);
  cfg.output_dir = b.path();
  REQUIRE(cmd_simulate(cfg, log) == kSuccess);
  for (const char* name : {"density_cars_per_km.csv", "speed_kph.csv", "vsl_rate.csv", "dbdz_per_m.csv",
                           "total_cars.csv", "summary.json", "density.svg", "speed.svg", "vsl.svg"}) {
    CAPTURE(name);
    REQUIRE(fs::exists(a.path() / name));
    CHECK(slurp(a.path() / name) == slurp(b.path() / name));
  }
  const std::string summary = slurp(a.path() / "summary.json");
  CHECK(summary.find("\"model\": \"nonlinear\"") != std::string::npos);
  CHECK(summary.find("\"final_total_cars\"") != std::string::npos);
}

TEST_CASE("equilibrium run produces constant fields") {
  TempDir d;
  std::ostringstream log;
  RunConfig cfg = small_config(d.path());
  cfg.scenario.ic_amplitude = 0.0;
  cfg.scenario.bc_osc_amplitude = 0.0;
  cfg.scenario.bc_growth_rate = 0.0;
  cfg.scenario.control_enabled = true;
  cfg.formats = parse_formats("csv");
  REQUIRE(cmd_simulate(cfg, log) == kSuccess);

  const Table rho = load(d.path() / "density_cars_per_km.csv");
  CHECK(rho.header.size() == 101);
  CHECK(rho.header[1].rfind("z_m=", 0) == 0);
  for (const auto& row : rho.rows) {
    for (std::size_t c = 1; c < row.size(); ++c) CHECK(row[c] == doctest::Approx(50.0).epsilon(1e-14));
  }
  for (const auto& row : load(d.path() / "vsl_rate.csv").rows) {
    for (std::size_t c = 1; c < row.size(); ++c) CHECK(row[c] == 1.0);
  }
  for (const auto& row : load(d.path() / "total_cars.csv").rows) CHECK(row[1] == doctest::Approx(100.0));
  CHECK_FALSE(fs::exists(d.path() / "summary.json"));
}

TEST_CASE("sweep orders the final totals") {
  TempDir d;
  std::ostringstream log;
  RunConfig cfg = small_config(d.path());
  cfg.scenario.control_enabled = true;
  cfg.formats = parse_formats("csv,json");
  REQUIRE(cmd_sweep(cfg, log) == kSuccess);
  const Table t = load(d.path() / "total_cars_sweep.csv");
  REQUIRE(t.header == std::vector<std::string>{"time_s", "q0=1e-06", "q0=1e-05", "q0=5e-05", "q0=0.0005"});
  const auto& last = t.rows.back();
  CHECK(last[0] == 120.0);
  for (std::size_t c = 1; c + 1 < last.size(); ++c) CHECK(last[c] > last[c + 1]);
  CHECK(fs::exists(d.path() / "sweep_summary.json"));
  CHECK(fs::exists(d.path() / "q0_5e-05" / "total_cars.csv"));

  cfg.sweep_q0.clear();
  CHECK(cmd_sweep(cfg, log) == kUsageError);
}

TEST_CASE("riccati curves vanish at the downstream end and are ordered") {
  TempDir d;
  std::ostringstream log;
  RunConfig cfg = small_config(d.path());
  cfg.riccati_points = 41;
  REQUIRE(cmd_riccati(cfg, log) == kSuccess);
  const Table t = load(d.path() / "riccati.csv");
  REQUIRE(t.rows.size() == 41);
  REQUIRE(t.header.size() == 9);
  CHECK(t.header[1] == "phi_q0=1e-06");
  CHECK(t.header[5] == "gain_q0=1e-06");
  for (std::size_t c = 1; c < 9; ++c) CHECK(t.rows.back()[c] == 0.0);
  for (std::size_t r = 0; r + 1 < t.rows.size(); ++r) {
    for (std::size_t c = 1; c < 4; ++c) CHECK(t.rows[r][c] < t.rows[r][c + 1]);
  }
  CHECK(fs::exists(d.path() / "riccati_phi.svg"));
}

TEST_CASE("failed artifact writes leave nothing behind") {
  TempDir d;
  fs::create_directories(d.path() / "summary.json");
  Scenario sc = case_study_scenario();
  sc.n_cells = 20;
  const SimulationHistory h = run_simulation(sc);
  CHECK_THROWS(write_run_artifacts(d.path(), h, sc, OutputFormats{}));
  CHECK_FALSE(fs::exists(d.path() / "density_cars_per_km.csv"));
  CHECK_FALSE(fs::exists(d.path() / "total_cars.csv"));
}

TEST_CASE("verify reports every check") {
  std::ostringstream log;
  CHECK(cmd_verify(log, 50) == kSuccess);
  CHECK(log.str().find("[FAIL]") == std::string::npos);
  CHECK(log.str().find("[PASS]") != std::string::npos);
}
