#include "lwrvsl/io/summary.hpp"

#include <json.hpp>

namespace lwrvsl::io {

namespace {

using Json = nlohmann::ordered_json;

Json parameters(const Scenario& sc) {
  const DisplayUnitParams pu = to_display_units(sc.params);
  return Json{
      {"rho_max_cars_per_km", pu.rho_max_per_km},
      {"u_max_kph", pu.u_max_kph},
      {"rho_0_cars_per_km", pu.rho_0_per_km},
      {"b_0", pu.b_0},
      {"road_length_m", pu.road_length_m},
      {"sim_time_s", pu.sim_time_s},
      {"n_cells", sc.n_cells},
      {"cfl", sc.cfl},
      {"ic_amplitude_cars_per_km", per_m_to_per_km(sc.ic_amplitude)},
      {"bc_osc_amplitude_cars_per_km", per_m_to_per_km(sc.bc_osc_amplitude)},
      {"bc_osc_period_s", sc.bc_osc_period},
      {"bc_decay_rate_per_s", sc.bc_decay_rate},
      {"bc_growth_rate_cars_per_km_per_s", per_m_to_per_km(sc.bc_growth_rate)},
      {"r0", sc.r0},
      {"b_min", sc.clamp.b_min},
      {"b_max", sc.clamp.b_max},
      {"output_cadence_s", sc.output_cadence},
  };
}

Json summary_object(const RunSummary& s) {
  Json j{
      {"q0", s.q0},
      {"final_total_cars", s.final_total_cars},
      {"target_total_cars", s.target_total_cars},
      {"time_to_target_s", nullptr},
      {"min_density_cars_per_km", per_m_to_per_km(s.min_density)},
      {"max_density_cars_per_km", per_m_to_per_km(s.max_density)},
      {"mass_balance_residual_cars", s.mass_balance_residual},
  };
  if (s.time_to_target) j["time_to_target_s"] = *s.time_to_target;
  return j;
}

}  // namespace

std::string summary_json(const RunSummary& summary, const SimulationHistory& history, const Scenario& sc) {
  Json j{
      {"model", to_string(sc.model)},
      {"control_enabled", sc.control_enabled},
  };
  j.update(summary_object(summary));
  j["steps"] = history.steps;
  j["dt_s"] = fixed_time_step(sc);
  j["parameters"] = parameters(sc);
  return j.dump(2) + "\n";
}

std::string sweep_summary_json(const std::vector<SweepMember>& members, const Scenario& sc) {
  Json runs = Json::array();
  for (const auto& m : members) {
    if (m.ok()) {
      runs.push_back(summary_object(*m.summary));
    } else {
      runs.push_back(Json{{"q0", m.q0}, {"error", m.error}});
    }
  }
  Json j{
      {"model", to_string(sc.model)},
      {"control_enabled", sc.control_enabled},
      {"runs", runs},
      {"parameters", parameters(sc)},
  };
  return j.dump(2) + "\n";
}

}  // namespace lwrvsl::io
