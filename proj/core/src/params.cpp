#include "lwrvsl/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lwrvsl {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

void validate(const TrafficParams& p) {
  require_positive(p.rho_max, "rho_max");
  require_positive(p.u_max, "u_max");
  require_positive(p.rho_0, "rho_0");
  require_positive(p.b_0, "b_0");
  require_positive(p.road_length, "road_length");
  require_positive(p.sim_time, "sim_time");
  if (!(p.rho_0 < 0.5 * p.rho_max)) {
    throw std::invalid_argument("congested equilibrium: rho_0 must be below rho_max / 2");
  }
}

TrafficParams params_from_display_units(double rho_max_per_km, double u_max_kph,
                                      double rho_0_per_km, double road_length_m,
                                      double sim_time_s, double b_0) {
  TrafficParams p{
      .rho_max = per_km_to_per_m(rho_max_per_km),
      .u_max = kph_to_mps(u_max_kph),
      .rho_0 = per_km_to_per_m(rho_0_per_km),
      .b_0 = b_0,
      .road_length = road_length_m,
      .sim_time = sim_time_s,
  };
  validate(p);
  return p;
}

TrafficParams params_from_display_units(const DisplayUnitParams& p) {
  return params_from_display_units(p.rho_max_per_km, p.u_max_kph, p.rho_0_per_km,
                                 p.road_length_m, p.sim_time_s, p.b_0);
}

DisplayUnitParams to_display_units(const TrafficParams& p) {
  return {
      .rho_max_per_km = per_m_to_per_km(p.rho_max),
      .u_max_kph = mps_to_kph(p.u_max),
      .rho_0_per_km = per_m_to_per_km(p.rho_0),
      .road_length_m = p.road_length,
      .sim_time_s = p.sim_time,
      .b_0 = p.b_0,
  };
}

TrafficParams default_params() { return params_from_display_units(160.0, 115.0, 50.0, 2000.0, 120.0, 1.0); }

Grid1D::Grid1D(double road_length, std::size_t n_cells) {
  if (n_cells < 2) throw std::invalid_argument("grid needs at least 2 cells");
  if (!(road_length > 0.0) || !std::isfinite(road_length)) {
    throw std::invalid_argument("road_length must be positive and finite");
  }
  dz_ = road_length / static_cast<double>(n_cells);
  centers_.resize(n_cells);
  interfaces_.resize(n_cells + 1);
  for (std::size_t i = 0; i <= n_cells; ++i) {
    interfaces_[i] = static_cast<double>(i) * dz_;
  }
  interfaces_.back() = road_length;
  for (std::size_t i = 0; i < n_cells; ++i) {
    centers_[i] = (static_cast<double>(i) + 0.5) * dz_;
  }
}

Grid1D make_grid(double road_length, std::size_t n_cells) { return Grid1D(road_length, n_cells); }

}  // namespace lwrvsl
