#pragma once

#include <stdexcept>

#include <span>
#include <vector>

#include "lwrvsl/params.hpp"

namespace lwrvsl {

/// Scalar LQ problem for the linearized plant
///   d(drho)/dt = V d(drho)/dz + M drho + B0 u,   y = C0 drho,
/// with state weight Q0, control weight R0, on [0, length].
struct RiccatiProblem {
  double v_coef{};   // m/s, negative for a stable semigroup
  double m_coef{};   // 1/s
  double b0_coef{};  // cars/s
  double c0_coef{1.0};
  double q0{};
  double r0{1.0};
  double length{};
};

/// V = -b0 u_max (1 - 2 rho0/rho_max), B0 = -rho0 u_max (1 - rho0/rho_max),
/// M = 0, C0 = 1. Rejects setups with V >= 0.
RiccatiProblem assemble_problem(const TrafficParams& params, double q0, double r0 = 1.0);

/// Closed-form solution of V dPhi/dz = Q0 - B0^2 Phi^2 / R0, Phi(L) = 0.
/// Only valid for M = 0, C0 = 1, R0 = 1.
double phi_closed_form(double z, const RiccatiProblem& problem);

/// Fixed-step RK4 integration of the scalar Riccati equation backward from
/// z = L. Returns Phi at the n_steps + 1 nodes z_k = k L / n_steps. Handles
/// general M, C0, R0; used to cross-check the closed form.
std::vector<double> phi_numeric_oracle(const RiccatiProblem& problem, std::size_t n_steps);

/// K0(z) = -B0 Phi(z) / R0. Non-negative on [0, L], zero at L.
double feedback_gain(double z, const RiccatiProblem& problem);

/// u_opt = -sqrt(Q0) (E - 1) / (E + 1) * drho with E = exp(2 B0 sqrt(Q0) (z - L) / V),
/// evaluated directly rather than through Phi.
double explicit_control_law(double z, double delta_rho, const RiccatiProblem& problem);

/// Per-interface u_opt = db/dz from cell perturbations. Interior interfaces use
/// the mean of the adjacent cells; the two boundary interfaces are one-sided.
std::vector<double> control_field(std::span<const double> delta_rho, const RiccatiProblem& problem,
                                  const Grid1D& grid);

struct ClampRange {
  double b_min{0.1};
  double b_max{2.0};
};

struct ControlField {
  std::vector<double> dbdz;       // 1/m, per interface
  std::vector<double> b_profile;  // per interface, b_profile[0] = b0
  double timestamp{};
};

/// b(z) = b0 + cumulative trapezoidal integral of u_opt, then clamped.
ControlField integrate_vsl(std::span<const double> u_opt, double b0, const Grid1D& grid, ClampRange clamp,
                           double timestamp = 0.0);

}  // namespace lwrvsl
