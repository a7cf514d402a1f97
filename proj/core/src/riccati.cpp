#include "lwrvsl/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lwrvsl {

namespace {

void check_position(double z, const RiccatiProblem& p) {
  if (!(z >= 0.0 && z <= p.length)) throw std::domain_error("position outside [0, L]");
}

void check_closed_form_applies(const RiccatiProblem& p) {
  if (!(p.v_coef < 0.0)) throw std::invalid_argument("V >= 0: uncontrollable setup");
  if (!(p.q0 >= 0.0)) throw std::invalid_argument("Q0 must be non-negative");
  if (p.r0 != 1.0) throw std::invalid_argument("closed-form Phi requires R0 = 1");
  if (p.m_coef != 0.0 || p.c0_coef != 1.0) {
    throw std::invalid_argument("closed-form Phi requires M = 0 and C0 = 1");
  }
}

// expm1 keeps the numerator exactly zero at z = L.
double exponent(double z, const RiccatiProblem& p) {
  return 2.0 * p.b0_coef * std::sqrt(p.q0) * (z - p.length) / p.v_coef;
}

}  // namespace

RiccatiProblem assemble_problem(const TrafficParams& params, double q0, double r0) {
  if (!(q0 > 0.0)) throw std::invalid_argument("Q0 must be positive");
  if (!(r0 > 0.0)) throw std::invalid_argument("R0 must be positive");
  if (!(params.rho_0 >= 0.0)) throw std::invalid_argument("rho_0 must be non-negative");
  const double ratio = params.rho_0 / params.rho_max;
  RiccatiProblem p{
      .v_coef = -params.b_0 * params.u_max * (1.0 - 2.0 * ratio),
      .m_coef = 0.0,
      .b0_coef = -params.rho_0 * params.u_max * (1.0 - ratio),
      .c0_coef = 1.0,
      .q0 = q0,
      .r0 = r0,
      .length = params.road_length,
  };
  if (!(p.v_coef < 0.0)) throw std::invalid_argument("V >= 0: uncontrollable setup");
  return p;
}

double phi_closed_form(double z, const RiccatiProblem& p) {
  check_closed_form_applies(p);
  check_position(z, p);
  if (p.b0_coef == 0.0) {
    // V dPhi/dz = Q0 integrates to a linear profile.
    return p.q0 * (z - p.length) / p.v_coef;
  }
  const double em1 = std::expm1(exponent(z, p));
  return std::sqrt(p.q0) * em1 / (p.b0_coef * (em1 + 2.0));
}

std::vector<double> phi_numeric_oracle(const RiccatiProblem& p, std::size_t n_steps) {
  if (n_steps < 100) throw std::invalid_argument("oracle needs at least 100 steps");
  if (p.v_coef == 0.0) throw std::invalid_argument("V must be nonzero");
  const auto rhs = [&p](double phi) {
    return (2.0 * p.m_coef * phi + p.c0_coef * p.q0 * p.c0_coef - p.b0_coef * phi * phi * p.b0_coef / p.r0) /
           p.v_coef;
  };
  std::vector<double> phi(n_steps + 1, 0.0);
  const double h = -p.length / static_cast<double>(n_steps);
  double y = 0.0;
  for (std::size_t k = n_steps; k > 0; --k) {
    const double k1 = rhs(y);
    const double k2 = rhs(y + 0.5 * h * k1);
    const double k3 = rhs(y + 0.5 * h * k2);
    const double k4 = rhs(y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    phi[k - 1] = y;
  }
  return phi;
}

double feedback_gain(double z, const RiccatiProblem& p) { return -p.b0_coef * phi_closed_form(z, p) / p.r0; }

double explicit_control_law(double z, double delta_rho, const RiccatiProblem& p) {
  check_closed_form_applies(p);
  check_position(z, p);
  const double e = std::exp(exponent(z, p));
  return -std::sqrt(p.q0) * (e - 1.0) / (e + 1.0) * delta_rho;
}

std::vector<double> control_field(std::span<const double> delta_rho, const RiccatiProblem& problem,
                                  const Grid1D& grid) {
  const std::size_t n = grid.n_cells();
  if (delta_rho.size() != n) throw std::invalid_argument("control_field: field does not match grid");
  const auto& zi = grid.interfaces();
  std::vector<double> u(n + 1);
  u[0] = feedback_gain(zi[0], problem) * delta_rho[0];
  for (std::size_t i = 1; i < n; ++i) {
    u[i] = feedback_gain(zi[i], problem) * 0.5 * (delta_rho[i - 1] + delta_rho[i]);
  }
  u[n] = feedback_gain(zi[n], problem) * delta_rho[n - 1];
  return u;
}

ControlField integrate_vsl(std::span<const double> u_opt, double b0, const Grid1D& grid, ClampRange clamp,
                           double timestamp) {
  if (!(clamp.b_min >= 0.0 && clamp.b_min < b0 && b0 < clamp.b_max)) {
    throw std::invalid_argument("clamp bounds must satisfy 0 <= b_min < b0 < b_max");
  }
  if (u_opt.size() != grid.n_interfaces()) throw std::invalid_argument("integrate_vsl: field does not match grid");
  ControlField out;
  out.timestamp = timestamp;
  out.dbdz.assign(u_opt.begin(), u_opt.end());
  out.b_profile.resize(u_opt.size());
  double b = b0;
  out.b_profile[0] = b0;
  const double dz = grid.dz();
  for (std::size_t i = 1; i < u_opt.size(); ++i) {
    b += 0.5 * (u_opt[i - 1] + u_opt[i]) * dz;
    out.b_profile[i] = b;
  }
  for (double& v : out.b_profile) v = std::clamp(v, clamp.b_min, clamp.b_max);
  return out;
}

}  // namespace lwrvsl
