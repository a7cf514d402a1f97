#include "lwrvsl/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lwrvsl {

namespace {

constexpr double kCflSlack = 1e-12;
constexpr double kRangeSlack = 1e-12;

void check_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
}

}  // namespace

BoundaryGhosts apply_boundary(const DensityField& field, double upstream_density, const TrafficParams& params) {
  if (!(upstream_density >= 0.0 && upstream_density <= params.rho_max)) {
    throw std::domain_error("upstream density outside [0, rho_max]");
  }
  if (field.values.empty()) throw std::invalid_argument("empty field");
  const double shift = field.kind == FieldKind::perturbation ? params.rho_0 : 0.0;
  return {.upstream = upstream_density - shift, .downstream = field.values.back()};
}

double linear_wave_speed(const TrafficParams& params) {
  return params.b_0 * params.u_max * (1.0 - 2.0 * params.rho_0 / params.rho_max);
}

double cfl_max_dt(const DensityField& field, std::span<const double> b_profile, const Grid1D& grid,
                  const TrafficParams& params, double cfl_number, double fallback_dt) {
  if (!(cfl_number > 0.0 && cfl_number <= 1.0)) throw std::invalid_argument("cfl_number must be in (0, 1]");
  double speed = 0.0;
  if (field.kind == FieldKind::perturbation) {
    speed = std::abs(linear_wave_speed(params));
  } else {
    if (b_profile.size() != field.values.size() + 1) throw std::invalid_argument("b_profile does not match field");
    for (std::size_t i = 0; i < field.values.size(); ++i) {
      const double b = std::max(b_profile[i], b_profile[i + 1]);
      speed = std::max(speed, std::abs(characteristic_speed(field.values[i], VslRate(b), params)));
    }
  }
  if (speed == 0.0) return fallback_dt;
  return cfl_number * grid.dz() / speed;
}

StepResult step_linear(const DensityField& field, std::span<const double> u_opt, const Grid1D& grid,
                       const TrafficParams& params, const BoundaryGhosts& ghosts, double dt) {
  check_dt(dt);
  const std::size_t n = grid.n_cells();
  if (field.kind != FieldKind::perturbation) throw std::invalid_argument("step_linear needs a perturbation field");
  if (field.values.size() != n || u_opt.size() != n + 1) throw std::invalid_argument("step_linear: size mismatch");

  const double a = linear_wave_speed(params);
  const double courant = std::abs(a) * dt / grid.dz();
  if (courant > 1.0 + kCflSlack) throw SolverError("CFL violated in linear step: " + std::to_string(courant));

  const double ratio = params.rho_0 / params.rho_max;
  const double b0_coef = -params.rho_0 * params.u_max * (1.0 - ratio);
  const auto& d = field.values;

  StepResult out;
  out.dt_used = dt;
  out.interface_fluxes.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double left = i == 0 ? ghosts.upstream : d[i - 1];
    const double right = i == n ? ghosts.downstream : d[i];
    out.interface_fluxes[i] = a >= 0.0 ? a * left : a * right;
  }
  out.field.kind = FieldKind::perturbation;
  out.field.time = field.time + dt;
  out.field.values.resize(n);
  const double r = dt / grid.dz();
  for (std::size_t i = 0; i < n; ++i) {
    const double source = b0_coef * 0.5 * (u_opt[i] + u_opt[i + 1]);
    out.field.values[i] = d[i] - r * (out.interface_fluxes[i + 1] - out.interface_fluxes[i]) + dt * source;
  }
  return out;
}

double godunov_interface_flux(double rho_left, double rho_right, VslRate b, const TrafficParams& params) {
  const double rho_c = critical_density(params);
  const double demand = flux(std::min(rho_left, rho_c), b, params);
  const double supply = rho_right > rho_c ? flux(rho_right, b, params) : flux(rho_c, b, params);
  return std::min(demand, supply);
}

StepResult step_nonlinear(const DensityField& field, std::span<const double> b_profile, const Grid1D& grid,
                          const TrafficParams& params, const BoundaryGhosts& ghosts, double dt) {
  check_dt(dt);
  const std::size_t n = grid.n_cells();
  if (field.kind != FieldKind::absolute) throw std::invalid_argument("step_nonlinear needs an absolute field");
  if (field.values.size() != n || b_profile.size() != n + 1) {
    throw std::invalid_argument("step_nonlinear: size mismatch");
  }
  const double limit = cfl_max_dt(field, b_profile, grid, params, 1.0, dt);
  if (dt > limit * (1.0 + kCflSlack)) {
    throw SolverError("CFL violated in nonlinear step: dt " + std::to_string(dt) + " > " + std::to_string(limit));
  }

  const auto& rho = field.values;
  StepResult out;
  out.dt_used = dt;
  out.interface_fluxes.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double left = i == 0 ? ghosts.upstream : rho[i - 1];
    const double right = i == n ? ghosts.downstream : rho[i];
    out.interface_fluxes[i] = godunov_interface_flux(left, right, VslRate(b_profile[i]), params);
  }
  out.field.kind = FieldKind::absolute;
  out.field.time = field.time + dt;
  out.field.values.resize(n);
  const double r = dt / grid.dz();
  for (std::size_t i = 0; i < n; ++i) {
    double v = rho[i] - r * (out.interface_fluxes[i + 1] - out.interface_fluxes[i]);
    if (v < -kRangeSlack || v > params.rho_max + kRangeSlack) {
      throw SolverError("density left [0, rho_max] in cell " + std::to_string(i));
    }
    out.field.values[i] = std::clamp(v, 0.0, params.rho_max);
  }
  return out;
}

}  // namespace lwrvsl
