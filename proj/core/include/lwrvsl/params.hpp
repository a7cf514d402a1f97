#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lwrvsl {

/// Physical constants of the road segment, all in SI units
/// (cars/m, m/s, m, s). `b_0` is the dimensionless base VSL rate.
struct TrafficParams {
  double rho_max{};
  double u_max{};
  double rho_0{};
  double b_0{1.0};
  double road_length{};
  double sim_time{};
};

/// The same constants in the units used for configuration and output.
struct DisplayUnitParams {
  double rho_max_per_km{};
  double u_max_kph{};
  double rho_0_per_km{};
  double road_length_m{};
  double sim_time_s{};
  double b_0{1.0};
};

inline constexpr double kCarsPerKmToPerM = 1.0 / 1000.0;
inline constexpr double kKphToMps = 1.0 / 3.6;

constexpr double per_km_to_per_m(double v) { return v * kCarsPerKmToPerM; }
constexpr double per_m_to_per_km(double v) { return v * 1000.0; }
constexpr double kph_to_mps(double v) { return v / 3.6; }
constexpr double mps_to_kph(double v) { return v * 3.6; }

/// Throws std::invalid_argument if any invariant is violated. A density
/// at or above rho_max/2 reports "congested equilibrium".
void validate(const TrafficParams& params);

TrafficParams params_from_display_units(double rho_max_per_km, double u_max_kph,
                                      double rho_0_per_km, double road_length_m,
                                      double sim_time_s, double b_0 = 1.0);
TrafficParams params_from_display_units(const DisplayUnitParams& p);
DisplayUnitParams to_display_units(const TrafficParams& params);

/// 160 cars/km, 115 km/h, 50 cars/km, 2000 m, 120 s, b0 = 1.
TrafficParams default_params();

/// Uniform partition of [0, road_length].
class Grid1D {
 public:
  Grid1D(double road_length, std::size_t n_cells);

  std::size_t n_cells() const { return centers_.size(); }
  std::size_t n_interfaces() const { return interfaces_.size(); }
  double dz() const { return dz_; }
  double length() const { return interfaces_.back(); }
  const std::vector<double>& cell_centers() const { return centers_; }
  const std::vector<double>& interfaces() const { return interfaces_; }

 private:
  double dz_;
  std::vector<double> centers_;
  std::vector<double> interfaces_;
};

Grid1D make_grid(double road_length, std::size_t n_cells);

}  // namespace lwrvsl
