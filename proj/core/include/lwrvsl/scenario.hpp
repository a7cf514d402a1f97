#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lwrvsl/params.hpp"
#include "lwrvsl/riccati.hpp"
#include "lwrvsl/solvers.hpp"

namespace lwrvsl {

enum class Model { linear, nonlinear };

const char* to_string(Model model);

/// How the road length enters the upstream boundary's decay and growth terms.
enum class BoundaryLengthUnit { kilometers, meters };

/// Case-study definition. Everything is SI internally.
struct Scenario {
  TrafficParams params{default_params()};
  std::size_t n_cells{400};
  double cfl{0.9};
  double ic_amplitude{0.010};      // cars/m
  double bc_osc_amplitude{0.005};  // cars/m
  double bc_decay_rate{2e-6};      // 1/s
  double bc_osc_period{20.0};      // s
  double bc_growth_rate{1.25e-4};  // cars/m per s
  double q0{5e-5};
  double r0{1.0};
  bool control_enabled{false};
  Model model{Model::linear};
  ClampRange clamp{};
  double output_cadence{0.5};  // s
};

/// Decay rate and growth rate for the upstream boundary under the given
/// reading of L: decay = L * 1e-6, growth = 1 / (4 L) cars/km per s.
void set_boundary_reading(Scenario& scenario, BoundaryLengthUnit unit);

Scenario case_study_scenario(Model model = Model::linear, bool control = false, double q0 = 5e-5);

/// Throws std::invalid_argument when the scenario cannot be run.
void validate(const Scenario& scenario);

double initial_condition(double z, const Scenario& scenario);
double upstream_boundary(double t, const Scenario& scenario);

/// Riemann sum of cell averages; perturbation fields are shifted by rho_0.
double total_cars(const DensityField& field, const Grid1D& grid, const TrafficParams& params);

double target_total_cars(const TrafficParams& params);

struct SimulationHistory {
  std::vector<double> times;
  std::vector<DensityField> density_frames;
  std::vector<std::vector<double>> speed_frames;    // per cell, m/s
  std::vector<std::vector<double>> vsl_frames;      // per interface
  std::vector<std::vector<double>> control_frames;  // per interface, 1/m
  std::vector<double> total_cars_series;

  // Accumulated over every solver step, not just recorded frames.
  double max_density{};  // absolute, cars/m
  double min_density{};
  double inflow_cars{};   // integral of the upstream interface flux
  double outflow_cars{};  // integral of the downstream interface flux
  std::size_t steps{};
};

/// Fixed step used by run_simulation: cfl * dz / (b_max * u_max), reduced so
/// that a whole number of steps spans one output interval.
double fixed_time_step(const Scenario& scenario);

SimulationHistory run_simulation(const Scenario& scenario);

struct RunSummary {
  double q0{};
  double final_total_cars{};
  double target_total_cars{};
  double min_density{};
  double max_density{};
  /// Earliest recorded time after which total cars stays within 5% of target.
  std::optional<double> time_to_target;
  double mass_balance_residual{};  // cars; nonlinear model only, zero otherwise
};

RunSummary summarize(const SimulationHistory& history, const Scenario& scenario);

struct SweepMember {
  double q0{};
  std::optional<SimulationHistory> history;
  std::optional<RunSummary> summary;
  std::string error;  // non-empty when the run failed

  bool ok() const { return error.empty(); }
};

/// One independent run per q0, executed concurrently. Member order follows q0_list.
std::vector<SweepMember> sweep_q0(const Scenario& scenario, const std::vector<double>& q0_list);

}  // namespace lwrvsl
