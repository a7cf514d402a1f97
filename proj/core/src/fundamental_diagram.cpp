#include "lwrvsl/fundamental_diagram.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lwrvsl {

namespace {

void check_density(double rho, const TrafficParams& params) {
  if (!(rho >= 0.0 && rho <= params.rho_max)) {
    throw std::domain_error("density " + std::to_string(rho) + " outside [0, rho_max]");
  }
}

}  // namespace

VslRate::VslRate(double b) : b_(b) {
  if (!(b >= 0.0) || !std::isfinite(b)) throw std::domain_error("VSL rate must be non-negative");
}

double equilibrium_speed(double rho, const TrafficParams& params) {
  check_density(rho, params);
  return params.u_max * (1.0 - rho / params.rho_max);
}

double vsl_speed(double rho, VslRate b, const TrafficParams& params) {
  return b.value() * equilibrium_speed(rho, params);
}

double flux(double rho, VslRate b, const TrafficParams& params) { return rho * vsl_speed(rho, b, params); }

double characteristic_speed(double rho, VslRate b, const TrafficParams& params) {
  check_density(rho, params);
  return b.value() * params.u_max * (1.0 - 2.0 * rho / params.rho_max);
}

double critical_density(const TrafficParams& params) { return 0.5 * params.rho_max; }

}  // namespace lwrvsl
