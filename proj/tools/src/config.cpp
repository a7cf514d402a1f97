#include "lwrvsl/io/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace lwrvsl::io {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

void reject_unknown(const YAML::Node& node, const std::string& path, const std::set<std::string>& allowed) {
  if (!node.IsMap()) throw ConfigError(path + ": expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) throw ConfigError("unknown key: " + (path.empty() ? key : path + "." + key));
  }
}

// "<number> [unit]"; the unit, when present, must equal `unit`.
double quantity(const YAML::Node& node, const std::string& path, const std::string& unit) {
  if (!node.IsScalar()) throw ConfigError(path + ": expected a scalar");
  const std::string text = trim(node.Scalar());
  const auto split = text.find_first_of(" \t");
  const std::string number = text.substr(0, split);
  const std::string suffix = split == std::string::npos ? std::string{} : trim(text.substr(split));
  double value{};
  const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
  if (ec != std::errc{} || ptr != number.data() + number.size()) {
    throw ConfigError(path + ": not a number: '" + text + "'");
  }
  if (!suffix.empty() && suffix != unit) {
    throw ConfigError(path + ": unit '" + suffix + "' does not match expected '" +
                      (unit.empty() ? std::string("(dimensionless)") : unit) + "'");
  }
  return value;
}

std::vector<double> q0_list(const YAML::Node& node, const std::string& path) {
  std::vector<double> out;
  if (node.IsScalar()) {
    out.push_back(quantity(node, path, ""));
  } else if (node.IsSequence()) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      out.push_back(quantity(node[i], path + "[" + std::to_string(i) + "]", ""));
    }
  } else {
    throw ConfigError(path + ": expected a number or a list of numbers");
  }
  if (out.empty()) throw ConfigError(path + ": list is empty");
  for (double q : out) {
    if (!(q > 0.0)) throw ConfigError(path + ": weights must be positive");
  }
  return out;
}

bool flag(const YAML::Node& node, const std::string& path) {
  try {
    return node.as<bool>();
  } catch (const YAML::Exception&) {
    throw ConfigError(path + ": expected true or false");
  }
}

std::string word(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) throw ConfigError(path + ": expected a scalar");
  return node.Scalar();
}

std::size_t count(const YAML::Node& node, const std::string& path) {
  const double v = quantity(node, path, "");
  if (!(v >= 0.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw ConfigError(path + ": expected a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

std::vector<double> case_study_q0_values() { return {1e-6, 1e-5, 5e-5, 5e-4}; }

OutputFormats parse_formats(std::string_view list) {
  OutputFormats f{false, false, false};
  std::stringstream ss{std::string(list)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item == "csv") {
      f.csv = true;
    } else if (item == "json") {
      f.json = true;
    } else if (item == "svg") {
      f.svg = true;
    } else if (!item.empty()) {
      throw ConfigError("unknown output format: " + item);
    }
  }
  if (!f.any()) throw ConfigError("output formats must not be empty");
  return f;
}

RunConfig parse_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }

  RunConfig cfg;
  if (root.IsNull()) {
    validate(cfg);
    return cfg;
  }
  reject_unknown(root, "", {"traffic", "grid", "scenario", "control", "output", "sweep", "riccati"});

  Scenario& sc = cfg.scenario;
  DisplayUnitParams pu = to_display_units(sc.params);
  if (const auto t = root["traffic"]) {
    reject_unknown(t, "traffic", {"rho_max", "u_max", "rho_0", "b_0", "road_length", "sim_time"});
    if (t["rho_max"]) pu.rho_max_per_km = quantity(t["rho_max"], "traffic.rho_max", "cars/km");
    if (t["u_max"]) pu.u_max_kph = quantity(t["u_max"], "traffic.u_max", "km/h");
    if (t["rho_0"]) pu.rho_0_per_km = quantity(t["rho_0"], "traffic.rho_0", "cars/km");
    if (t["b_0"]) pu.b_0 = quantity(t["b_0"], "traffic.b_0", "");
    if (t["road_length"]) pu.road_length_m = quantity(t["road_length"], "traffic.road_length", "m");
    if (t["sim_time"]) pu.sim_time_s = quantity(t["sim_time"], "traffic.sim_time", "s");
  }
  try {
    sc.params = params_from_display_units(pu);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("traffic: ") + e.what());
  }

  if (const auto g = root["grid"]) {
    reject_unknown(g, "grid", {"n_cells", "cfl"});
    if (g["n_cells"]) sc.n_cells = count(g["n_cells"], "grid.n_cells");
    if (g["cfl"]) sc.cfl = quantity(g["cfl"], "grid.cfl", "");
  }

  BoundaryLengthUnit reading = BoundaryLengthUnit::kilometers;
  std::optional<double> decay;
  std::optional<double> growth;
  if (const auto s = root["scenario"]) {
    reject_unknown(s, "scenario", {"model", "ic_amplitude", "bc_osc_amplitude", "bc_osc_period", "bc_length_unit",
                                   "bc_decay_rate", "bc_growth_rate"});
    if (s["model"]) {
      const std::string m = word(s["model"], "scenario.model");
      if (m == "linear") {
        sc.model = Model::linear;
      } else if (m == "nonlinear") {
        sc.model = Model::nonlinear;
      } else {
        throw ConfigError("scenario.model: expected linear or nonlinear, got '" + m + "'");
      }
    }
    if (s["ic_amplitude"]) {
      sc.ic_amplitude = per_km_to_per_m(quantity(s["ic_amplitude"], "scenario.ic_amplitude", "cars/km"));
    }
    if (s["bc_osc_amplitude"]) {
      sc.bc_osc_amplitude = per_km_to_per_m(quantity(s["bc_osc_amplitude"], "scenario.bc_osc_amplitude", "cars/km"));
    }
    if (s["bc_osc_period"]) sc.bc_osc_period = quantity(s["bc_osc_period"], "scenario.bc_osc_period", "s");
    if (s["bc_length_unit"]) {
      const std::string u = word(s["bc_length_unit"], "scenario.bc_length_unit");
      if (u == "km") {
        reading = BoundaryLengthUnit::kilometers;
      } else if (u == "m") {
        reading = BoundaryLengthUnit::meters;
      } else {
        throw ConfigError("scenario.bc_length_unit: expected km or m, got '" + u + "'");
      }
    }
    if (s["bc_decay_rate"]) decay = quantity(s["bc_decay_rate"], "scenario.bc_decay_rate", "1/s");
    if (s["bc_growth_rate"]) {
      growth = per_km_to_per_m(quantity(s["bc_growth_rate"], "scenario.bc_growth_rate", "cars/km/s"));
    }
  }
  set_boundary_reading(sc, reading);
  if (decay) sc.bc_decay_rate = *decay;
  if (growth) sc.bc_growth_rate = *growth;

  if (const auto c = root["control"]) {
    reject_unknown(c, "control", {"enabled", "q0", "r0", "b_min", "b_max"});
    if (c["enabled"]) sc.control_enabled = flag(c["enabled"], "control.enabled");
    if (c["q0"]) sc.q0 = quantity(c["q0"], "control.q0", "");
    if (c["r0"]) sc.r0 = quantity(c["r0"], "control.r0", "");
    if (c["b_min"]) sc.clamp.b_min = quantity(c["b_min"], "control.b_min", "");
    if (c["b_max"]) sc.clamp.b_max = quantity(c["b_max"], "control.b_max", "");
  }

  if (const auto o = root["output"]) {
    reject_unknown(o, "output", {"dir", "cadence", "formats"});
    if (o["dir"]) cfg.output_dir = word(o["dir"], "output.dir");
    if (o["cadence"]) sc.output_cadence = quantity(o["cadence"], "output.cadence", "s");
    if (const auto f = o["formats"]) {
      std::string joined;
      if (f.IsSequence()) {
        for (const auto& item : f) joined += item.as<std::string>() + ",";
      } else {
        joined = word(f, "output.formats");
      }
      cfg.formats = parse_formats(joined);
    }
  }

  if (const auto s = root["sweep"]) {
    reject_unknown(s, "sweep", {"q0"});
    if (s["q0"]) cfg.sweep_q0 = q0_list(s["q0"], "sweep.q0");
  }
  if (const auto r = root["riccati"]) {
    reject_unknown(r, "riccati", {"q0", "points"});
    if (r["q0"]) cfg.riccati_q0 = q0_list(r["q0"], "riccati.q0");
    if (r["points"]) cfg.riccati_points = count(r["points"], "riccati.points");
  }

  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const RunConfig& cfg) {
  if (!cfg.formats.any()) throw ConfigError("output formats must not be empty");
  if (cfg.riccati_points < 2) throw ConfigError("riccati.points must be at least 2");
  try {
    lwrvsl::validate(cfg.scenario);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace lwrvsl::io
