#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "lwrvsl/riccati.hpp"
#include "lwrvsl/scenario.hpp"

namespace lwrvsl {

struct CheckResult {
  std::string name;
  bool passed{};
  double measured{};
  double threshold{};
  std::string detail;
};

using PhiFunction = std::function<double(double)>;

/// sup |closed form - RK4 oracle| / sup |Phi| on the oracle nodes.
CheckResult check_oracle_equivalence(const RiccatiProblem& problem, std::size_t n_steps = 100000);

/// max |V Phi' - (Q0 - B0^2 Phi^2 / R0)| / Q0 with Phi' from a fourth-order
/// central difference of `phi`, over interior points of an n_points grid.
CheckResult check_riccati_residual(const RiccatiProblem& problem, const PhiFunction& phi,
                                   std::size_t n_points = 10000, double tolerance = 1e-8);
CheckResult check_riccati_residual(const RiccatiProblem& problem, std::size_t n_points = 10000,
                                   double tolerance = 1e-8);

/// Phi(L) must be exactly zero.
CheckResult check_terminal_condition(const RiccatiProblem& problem);

/// |N(T) - N(0) - (inflow - outflow)| / N(0) for a nonlinear run.
CheckResult check_conservation(const Scenario& scenario, double tolerance = 1e-9);

struct ConvergenceStudy {
  std::vector<std::size_t> n_cells;
  std::vector<double> l1_errors;
  std::vector<double> ratios;
};

/// Smooth free-flow advection of a sin^2 bump with constant inflow, compared
/// against the exact solution (characteristics for the nonlinear model).
/// `grids` successive refinements starting at n_coarse cells.
ConvergenceStudy convergence_study(Model model, std::size_t n_coarse, std::size_t grids = 2);
CheckResult check_convergence(Model model, std::size_t n_coarse, double lo = 1.7, double hi = 2.3);

struct ConsistencyStudy {
  std::vector<double> epsilons;
  std::vector<double> gaps;  // sup |rho_0 + drho_linear - rho_nonlinear| at T, cars/m
  std::vector<double> ratios;
};

/// Scales all perturbation amplitudes of `base` by each epsilon and compares
/// the linear and nonlinear solutions at the final time.
ConsistencyStudy linearization_study(const Scenario& base, const std::vector<double>& epsilons);
CheckResult check_linearization_consistency(const Scenario& base, double lo = 3.0, double hi = 5.0);

/// Riccati residual, oracle equivalence, terminal condition, conservation,
/// convergence order for both solvers, and linearization consistency.
std::vector<CheckResult> run_verification_suite(std::size_t n_coarse = 100);

}  // namespace lwrvsl
