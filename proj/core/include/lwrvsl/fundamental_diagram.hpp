#pragma once

#include <stdexcept>

#include "lwrvsl/params.hpp"

namespace lwrvsl {

/// Multiplier on the maximum speed. Negative rates are rejected.
class VslRate {
 public:
  constexpr VslRate() = default;
  explicit VslRate(double b);

  constexpr double value() const { return b_; }

 private:
  double b_{1.0};
};

// Greenshield relations. Densities outside [0, rho_max] throw
// std::domain_error rather than being clamped.

double equilibrium_speed(double rho, const TrafficParams& params);
double vsl_speed(double rho, VslRate b, const TrafficParams& params);
double flux(double rho, VslRate b, const TrafficParams& params);

/// dq/drho = b * u_max * (1 - 2 rho / rho_max).
double characteristic_speed(double rho, VslRate b, const TrafficParams& params);

double critical_density(const TrafficParams& params);

}  // namespace lwrvsl
