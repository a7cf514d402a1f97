#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "lwrvsl/fundamental_diagram.hpp"
#include "lwrvsl/params.hpp"

namespace lwrvsl {

enum class FieldKind { absolute, perturbation };

/// Cell-averaged density (absolute) or density perturbation around rho_0.
struct DensityField {
  std::vector<double> values;
  FieldKind kind{FieldKind::absolute};
  double time{};
};

struct StepResult {
  DensityField field;
  double dt_used{};
  std::vector<double> interface_fluxes;  // cars/s (perturbation flux for the linear model)
};

/// Raised when a step would break stability or leave the physical range.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ghost-cell values on either side of the domain, in the field's own kind.
struct BoundaryGhosts {
  double upstream{};
  double downstream{};
};

/// Dirichlet upstream (the prescribed absolute density, shifted by rho_0 for
/// perturbation fields) and zero-gradient downstream.
BoundaryGhosts apply_boundary(const DensityField& field, double upstream_density, const TrafficParams& params);

/// Advection coefficient of the linear model, -V = b0 u_max (1 - 2 rho0/rho_max).
double linear_wave_speed(const TrafficParams& params);

/// Largest stable dt for the current state. For perturbation fields the wave
/// speed is the constant linear coefficient; for absolute fields it is the
/// largest |dq/drho| over the cells, using the larger neighbouring b. If every
/// wave speed is zero, `fallback_dt` (the remaining simulation time) is returned.
double cfl_max_dt(const DensityField& field, std::span<const double> b_profile, const Grid1D& grid,
                  const TrafficParams& params, double cfl_number, double fallback_dt);

/// Explicit first-order upwind update of the linear perturbation equation with
/// the source B0 * u, u being the per-interface db/dz averaged to cells.
StepResult step_linear(const DensityField& field, std::span<const double> u_opt, const Grid1D& grid,
                       const TrafficParams& params, const BoundaryGhosts& ghosts, double dt);

/// Demand-supply (Godunov) flux for the concave Greenshield flux.
double godunov_interface_flux(double rho_left, double rho_right, VslRate b, const TrafficParams& params);

/// Conservative Godunov update of d(rho)/dt + d(q)/dz = 0 with b frozen at interfaces.
StepResult step_nonlinear(const DensityField& field, std::span<const double> b_profile, const Grid1D& grid,
                          const TrafficParams& params, const BoundaryGhosts& ghosts, double dt);

}  // namespace lwrvsl
