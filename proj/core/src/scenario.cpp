#include "lwrvsl/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lwrvsl {

const char* to_string(Model model) { return model == Model::linear ? "linear" : "nonlinear"; }

void set_boundary_reading(Scenario& sc, BoundaryLengthUnit unit) {
  const double length = unit == BoundaryLengthUnit::kilometers ? sc.params.road_length / 1000.0
                                                               : sc.params.road_length;
  sc.bc_decay_rate = length * 1e-6;
  sc.bc_growth_rate = per_km_to_per_m(1.0 / (4.0 * length));
}

Scenario case_study_scenario(Model model, bool control, double q0) {
  Scenario sc;
  sc.model = model;
  sc.control_enabled = control;
  sc.q0 = q0;
  set_boundary_reading(sc, BoundaryLengthUnit::kilometers);
  return sc;
}

void validate(const Scenario& sc) {
  validate(sc.params);
  if (sc.n_cells < 2) throw std::invalid_argument("n_cells must be at least 2");
  if (!(sc.cfl > 0.0 && sc.cfl <= 1.0)) throw std::invalid_argument("cfl must be in (0, 1]");
  if (!(sc.output_cadence > 0.0)) throw std::invalid_argument("output cadence must be positive");
  if (!(sc.bc_osc_period > 0.0)) throw std::invalid_argument("boundary oscillation period must be positive");
  if (!(sc.q0 > 0.0)) throw std::invalid_argument("q0 must be positive");
  if (sc.r0 != 1.0) throw std::invalid_argument("r0 is locked to 1");
  const double b0 = sc.params.b_0;
  if (!(sc.clamp.b_min >= 0.0 && sc.clamp.b_min < b0 && b0 < sc.clamp.b_max)) {
    throw std::invalid_argument("clamp bounds must satisfy 0 <= b_min < b0 < b_max");
  }

  const double rho_c = critical_density(sc.params);
  const double rho_0 = sc.params.rho_0;
  if (!(rho_0 + std::abs(sc.ic_amplitude) < rho_c && rho_0 - std::abs(sc.ic_amplitude) > 0.0)) {
    throw std::invalid_argument("initial condition leaves the free-flow range (0, rho_max/2)");
  }
  // Sampled check of the boundary signal; finer than any period of interest.
  const std::size_t samples = std::max<std::size_t>(1000, static_cast<std::size_t>(sc.params.sim_time * 100.0));
  for (std::size_t k = 0; k <= samples; ++k) {
    const double t = sc.params.sim_time * static_cast<double>(k) / static_cast<double>(samples);
    const double rho = upstream_boundary(t, sc);
    if (!(rho > 0.0 && rho < rho_c)) {
      throw std::invalid_argument("upstream boundary leaves the free-flow range (0, rho_max/2) at t = " +
                                  std::to_string(t));
    }
  }
}

double initial_condition(double z, const Scenario& sc) {
  return sc.params.rho_0 + sc.ic_amplitude * std::sin(std::numbers::pi * z / sc.params.road_length);
}

double upstream_boundary(double t, const Scenario& sc) {
  return sc.params.rho_0 +
         sc.bc_osc_amplitude * std::exp(-sc.bc_decay_rate * t) * std::sin(std::numbers::pi * t / sc.bc_osc_period) +
         sc.bc_growth_rate * t;
}

double total_cars(const DensityField& field, const Grid1D& grid, const TrafficParams& params) {
  const double shift = field.kind == FieldKind::perturbation ? params.rho_0 : 0.0;
  double sum = 0.0;
  for (double v : field.values) sum += v + shift;
  return sum * grid.dz();
}

double target_total_cars(const TrafficParams& params) { return params.rho_0 * params.road_length; }

double fixed_time_step(const Scenario& sc) {
  const double dz = sc.params.road_length / static_cast<double>(sc.n_cells);
  const double dt_max = sc.cfl * dz / (sc.clamp.b_max * sc.params.u_max);
  const double per_output = std::ceil(sc.output_cadence / dt_max - 1e-12);
  return sc.output_cadence / per_output;
}

namespace {

class ClosedLoop {
 public:
  explicit ClosedLoop(const Scenario& sc)
      : sc_(sc), grid_(make_grid(sc.params.road_length, sc.n_cells)), delta_(sc.n_cells) {
    if (sc.control_enabled) problem_ = assemble_problem(sc.params, sc.q0, sc.r0);
    state_.kind = sc.model == Model::linear ? FieldKind::perturbation : FieldKind::absolute;
    state_.values.resize(sc.n_cells);
    const auto& zc = grid_.cell_centers();
    for (std::size_t i = 0; i < sc.n_cells; ++i) {
      const double rho = initial_condition(zc[i], sc);
      state_.values[i] = state_.kind == FieldKind::perturbation ? rho - sc.params.rho_0 : rho;
    }
    history_.min_density = sc.params.rho_max;
    track_range();
  }

  SimulationHistory run() {
    const double t_end = sc_.params.sim_time;
    const double dt = fixed_time_step(sc_);
    double t = 0.0;
    std::size_t segment = 0;
    update_control(t);
    record(t);
    while (t < t_end) {
      const double t_out = std::min(static_cast<double>(segment + 1) * sc_.output_cadence, t_end);
      double h = std::min(dt, cfl_max_dt(state_, control_.b_profile, grid_, sc_.params, sc_.cfl, t_end - t));
      if (t + h >= t_out - 1e-9 * dt) h = t_out - t;
      advance(t, h);
      t += h;
      if (t >= t_out - 1e-9 * dt) {
        t = t_out;
        ++segment;
        state_.time = t;
        update_control(t);
        record(t);
      } else {
        state_.time = t;
        update_control(t);
      }
    }
    return std::move(history_);
  }

 private:
  void update_control(double t) {
    const double rho_0 = sc_.params.rho_0;
    for (std::size_t i = 0; i < delta_.size(); ++i) {
      delta_[i] = state_.kind == FieldKind::perturbation ? state_.values[i] : state_.values[i] - rho_0;
    }
    std::vector<double> u = sc_.control_enabled ? control_field(delta_, problem_, grid_)
                                                : std::vector<double>(grid_.n_interfaces(), 0.0);
    control_ = integrate_vsl(u, sc_.params.b_0, grid_, sc_.clamp, t);
  }

  void advance(double t, double h) {
    const BoundaryGhosts ghosts = apply_boundary(state_, upstream_boundary(t, sc_), sc_.params);
    StepResult step = sc_.model == Model::linear
                          ? step_linear(state_, control_.dbdz, grid_, sc_.params, ghosts, h)
                          : step_nonlinear(state_, control_.b_profile, grid_, sc_.params, ghosts, h);
    if (sc_.model == Model::nonlinear) {
      history_.inflow_cars += h * step.interface_fluxes.front();
      history_.outflow_cars += h * step.interface_fluxes.back();
    }
    state_ = std::move(step.field);
    ++history_.steps;
    track_range();
  }

  void track_range() {
    const double shift = state_.kind == FieldKind::perturbation ? sc_.params.rho_0 : 0.0;
    for (double v : state_.values) {
      const double rho = v + shift;
      if (!(rho >= 0.0 && rho <= sc_.params.rho_max)) {
        throw SolverError("density left [0, rho_max] at t = " + std::to_string(state_.time));
      }
      history_.max_density = std::max(history_.max_density, rho);
      history_.min_density = std::min(history_.min_density, rho);
    }
  }

  void record(double t) {
    const std::size_t n = grid_.n_cells();
    const double shift = state_.kind == FieldKind::perturbation ? sc_.params.rho_0 : 0.0;
    std::vector<double> speed(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double b_cell = 0.5 * (control_.b_profile[i] + control_.b_profile[i + 1]);
      speed[i] = vsl_speed(state_.values[i] + shift, VslRate(b_cell), sc_.params);
    }
    DensityField frame = state_;
    frame.time = t;
    history_.times.push_back(t);
    history_.total_cars_series.push_back(total_cars(frame, grid_, sc_.params));
    history_.density_frames.push_back(std::move(frame));
    history_.speed_frames.push_back(std::move(speed));
    history_.vsl_frames.push_back(control_.b_profile);
    history_.control_frames.push_back(control_.dbdz);
  }

  const Scenario& sc_;
  Grid1D grid_;
  RiccatiProblem problem_{};
  DensityField state_;
  ControlField control_;
  std::vector<double> delta_;
  SimulationHistory history_;
};

}  // namespace

SimulationHistory run_simulation(const Scenario& scenario) {
  validate(scenario);
  return ClosedLoop(scenario).run();
}

RunSummary summarize(const SimulationHistory& h, const Scenario& sc) {
  RunSummary s;
  s.q0 = sc.q0;
  s.target_total_cars = target_total_cars(sc.params);
  s.final_total_cars = h.total_cars_series.empty() ? 0.0 : h.total_cars_series.back();
  s.min_density = h.min_density;
  s.max_density = h.max_density;
  const double tol = 0.05 * s.target_total_cars;
  std::size_t first = h.total_cars_series.size();
  while (first > 0 && std::abs(h.total_cars_series[first - 1] - s.target_total_cars) <= tol) --first;
  if (first < h.total_cars_series.size()) s.time_to_target = h.times[first];
  if (sc.model == Model::nonlinear && !h.total_cars_series.empty()) {
    s.mass_balance_residual = h.total_cars_series.back() - h.total_cars_series.front() -
                              (h.inflow_cars - h.outflow_cars);
  }
  return s;
}

std::vector<SweepMember> sweep_q0(const Scenario& scenario, const std::vector<double>& q0_list) {
  if (q0_list.empty()) throw std::invalid_argument("q0 list is empty");
  std::vector<std::future<SweepMember>> pending;
  pending.reserve(q0_list.size());
  for (double q0 : q0_list) {
    pending.push_back(std::async(std::launch::async, [scenario, q0] {
      SweepMember m;
      m.q0 = q0;
      try {
        Scenario sc = scenario;
        sc.q0 = q0;
        m.history = run_simulation(sc);
        m.summary = summarize(*m.history, sc);
      } catch (const std::exception& e) {
        std::ostringstream os;
        os << "q0 = " << q0 << ": " << e.what();
        m.error = os.str();
      }
      return m;
    }));
  }
  std::vector<SweepMember> out;
  out.reserve(pending.size());
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

}  // namespace lwrvsl
