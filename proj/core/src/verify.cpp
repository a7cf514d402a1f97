#include "lwrvsl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace lwrvsl {

namespace {

std::string describe(double value) {
  std::ostringstream os;
  os.precision(6);
  os << value;
  return os.str();
}

// Bump used by the convergence study: zero outside [0, L], C1 at the ends.
double bump(double s, double amplitude, double length) {
  if (s < 0.0 || s > length) return 0.0;
  const double v = std::sin(std::numbers::pi * s / length);
  return amplitude * v * v;
}

// Solves rho = rho_0 + bump(z - c(rho) t) by bisection. Valid before the
// characteristics cross, where the residual is monotone in rho.
double exact_nonlinear(double z, double t, double amplitude, const TrafficParams& p) {
  double lo = p.rho_0;
  double hi = p.rho_0 + amplitude;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double c = p.u_max * (1.0 - 2.0 * mid / p.rho_max);
    const double g = mid - (p.rho_0 + bump(z - c * t, amplitude, p.road_length));
    if (g < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (mid == lo && mid == hi) break;
  }
  return 0.5 * (lo + hi);
}

constexpr double kStudyAmplitude = 0.005;  // cars/m
constexpr double kStudyTime = 60.0;        // s, well before the bump steepens into a shock

double study_error(Model model, std::size_t n) {
  const TrafficParams p = default_params();
  const Grid1D grid = make_grid(p.road_length, n);
  const ClampRange clamp{};
  const double dt_max = 0.9 * grid.dz() / (clamp.b_max * p.u_max);
  const auto steps = static_cast<std::size_t>(std::ceil(kStudyTime / dt_max));
  const double dt = kStudyTime / static_cast<double>(steps);
  const auto& zc = grid.cell_centers();

  DensityField field;
  field.kind = model == Model::linear ? FieldKind::perturbation : FieldKind::absolute;
  field.values.resize(n);
  const double shift = model == Model::linear ? 0.0 : p.rho_0;
  for (std::size_t i = 0; i < n; ++i) field.values[i] = shift + bump(zc[i], kStudyAmplitude, p.road_length);

  const std::vector<double> zero_u(n + 1, 0.0);
  const std::vector<double> unit_b(n + 1, p.b_0);
  for (std::size_t k = 0; k < steps; ++k) {
    const BoundaryGhosts ghosts = apply_boundary(field, p.rho_0, p);
    field = model == Model::linear ? step_linear(field, zero_u, grid, p, ghosts, dt).field
                                   : step_nonlinear(field, unit_b, grid, p, ghosts, dt).field;
  }

  const double a = linear_wave_speed(p);
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double exact = model == Model::linear ? bump(zc[i] - a * kStudyTime, kStudyAmplitude, p.road_length)
                                                : exact_nonlinear(zc[i], kStudyTime, kStudyAmplitude, p);
    err += std::abs(field.values[i] - exact);
  }
  return err * grid.dz();
}

Scenario scaled(const Scenario& base, double eps) {
  Scenario sc = base;
  sc.ic_amplitude *= eps;
  sc.bc_osc_amplitude *= eps;
  sc.bc_growth_rate *= eps;
  return sc;
}

}  // namespace

CheckResult check_oracle_equivalence(const RiccatiProblem& problem, std::size_t n_steps) {
  const std::vector<double> oracle = phi_numeric_oracle(problem, n_steps);
  double diff = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < oracle.size(); ++k) {
    const double z = std::min(problem.length, problem.length * static_cast<double>(k) / static_cast<double>(n_steps));
    diff = std::max(diff, std::abs(phi_closed_form(z, problem) - oracle[k]));
    scale = std::max(scale, std::abs(oracle[k]));
  }
  const double rel = scale > 0.0 ? diff / scale : diff;
  return {"riccati oracle equivalence (q0 = " + describe(problem.q0) + ")", rel < 1e-8, rel, 1e-8,
          "sup-norm relative gap between closed form and RK4"};
}

CheckResult check_riccati_residual(const RiccatiProblem& problem, const PhiFunction& phi, std::size_t n_points,
                                   double tolerance) {
  const double h = problem.length / static_cast<double>(n_points - 1);
  double worst = 0.0;
  for (std::size_t k = 2; k + 2 < n_points; ++k) {
    const double z = h * static_cast<double>(k);
    const double d = (phi(z - 2 * h) - 8.0 * phi(z - h) + 8.0 * phi(z + h) - phi(z + 2 * h)) / (12.0 * h);
    const double value = phi(z);
    const double res = problem.v_coef * d -
                       (problem.q0 - problem.b0_coef * problem.b0_coef * value * value / problem.r0);
    worst = std::max(worst, std::abs(res));
  }
  const double scaled_res = worst / problem.q0;
  return {"riccati residual (q0 = " + describe(problem.q0) + ")", scaled_res < tolerance, scaled_res, tolerance,
          "max |V dPhi/dz - Q0 + B0^2 Phi^2| / Q0"};
}

CheckResult check_riccati_residual(const RiccatiProblem& problem, std::size_t n_points, double tolerance) {
  return check_riccati_residual(
      problem, [&problem](double z) { return phi_closed_form(z, problem); }, n_points, tolerance);
}

CheckResult check_terminal_condition(const RiccatiProblem& problem) {
  const double v = phi_closed_form(problem.length, problem);
  return {"riccati terminal condition (q0 = " + describe(problem.q0) + ")", v == 0.0, std::abs(v), 0.0,
          "Phi(L) must be exactly zero"};
}

CheckResult check_conservation(const Scenario& scenario, double tolerance) {
  Scenario sc = scenario;
  sc.model = Model::nonlinear;
  const SimulationHistory h = run_simulation(sc);
  const double n0 = h.total_cars_series.front();
  const double residual = h.total_cars_series.back() - n0 - (h.inflow_cars - h.outflow_cars);
  const double rel = std::abs(residual) / n0;
  return {std::string("mass balance (nonlinear, control ") + (sc.control_enabled ? "on" : "off") + ")",
          rel < tolerance, rel, tolerance, "|N(T) - N(0) - (in - out)| / N(0)"};
}

ConvergenceStudy convergence_study(Model model, std::size_t n_coarse, std::size_t grids) {
  ConvergenceStudy s;
  std::size_t n = n_coarse;
  for (std::size_t l = 0; l < grids; ++l) {
    s.n_cells.push_back(n);
    s.l1_errors.push_back(study_error(model, n));
    n *= 2;
  }
  for (std::size_t i = 0; i + 1 < s.l1_errors.size(); ++i) s.ratios.push_back(s.l1_errors[i] / s.l1_errors[i + 1]);
  return s;
}

CheckResult check_convergence(Model model, std::size_t n_coarse, double lo, double hi) {
  const ConvergenceStudy s = convergence_study(model, n_coarse, 2);
  const double ratio = s.ratios.front();
  return {std::string("first-order convergence (") + to_string(model) + ", " + std::to_string(n_coarse) + " -> " +
              std::to_string(2 * n_coarse) + " cells)",
          ratio >= lo && ratio <= hi, ratio, hi,
          "L1 error ratio, expected in [" + describe(lo) + ", " + describe(hi) + "]"};
}

ConsistencyStudy linearization_study(const Scenario& base, const std::vector<double>& epsilons) {
  ConsistencyStudy s;
  s.epsilons = epsilons;
  for (double eps : epsilons) {
    Scenario lin = scaled(base, eps);
    lin.model = Model::linear;
    Scenario nonlin = lin;
    nonlin.model = Model::nonlinear;
    const SimulationHistory hl = run_simulation(lin);
    const SimulationHistory hn = run_simulation(nonlin);
    const auto& dl = hl.density_frames.back().values;
    const auto& rn = hn.density_frames.back().values;
    double gap = 0.0;
    for (std::size_t i = 0; i < dl.size(); ++i) gap = std::max(gap, std::abs(base.params.rho_0 + dl[i] - rn[i]));
    s.gaps.push_back(gap);
  }
  for (std::size_t i = 0; i + 1 < s.gaps.size(); ++i) s.ratios.push_back(s.gaps[i] / s.gaps[i + 1]);
  return s;
}

CheckResult check_linearization_consistency(const Scenario& base, double lo, double hi) {
  const ConsistencyStudy s = linearization_study(base, {1.0, 0.5, 0.25});
  const bool ok = std::all_of(s.ratios.begin(), s.ratios.end(), [&](double r) { return r >= lo && r <= hi; });
  const double worst = *std::min_element(s.ratios.begin(), s.ratios.end());
  return {"linear/nonlinear consistency (eps = 1, 1/2, 1/4)", ok, worst, lo,
          "gap ratios " + describe(s.ratios[0]) + ", " + describe(s.ratios[1]) + ", expected in [" + describe(lo) +
              ", " + describe(hi) + "]"};
}

std::vector<CheckResult> run_verification_suite(std::size_t n_coarse) {
  std::vector<CheckResult> out;
  const TrafficParams params = default_params();
  for (double q0 : {1e-6, 1e-5, 5e-5, 5e-4}) {
    const RiccatiProblem problem = assemble_problem(params, q0);
    out.push_back(check_riccati_residual(problem));
    out.push_back(check_oracle_equivalence(problem));
    out.push_back(check_terminal_condition(problem));
  }
  out.push_back(check_conservation(case_study_scenario(Model::nonlinear, false)));
  out.push_back(check_conservation(case_study_scenario(Model::nonlinear, true, 5e-4)));
  out.push_back(check_convergence(Model::linear, n_coarse));
  out.push_back(check_convergence(Model::nonlinear, n_coarse));
  out.push_back(check_linearization_consistency(case_study_scenario(Model::linear, false)));
  return out;
}

}  // namespace lwrvsl
