#include "lwrvsl/io/commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "lwrvsl/io/csv.hpp"
#include "lwrvsl/io/summary.hpp"
#include "lwrvsl/io/svg.hpp"
#include "lwrvsl/riccati.hpp"
#include "lwrvsl/verify.hpp"

namespace lwrvsl::io {

namespace fs = std::filesystem;

namespace {

class ArtifactWriter {
 public:
  explicit ArtifactWriter(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  ArtifactWriter(const ArtifactWriter&) = delete;
  ArtifactWriter& operator=(const ArtifactWriter&) = delete;

  ~ArtifactWriter() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& p : written_) fs::remove(p, ec);
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    const fs::path path = dir_ / name;
    written_.push_back(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    body(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
  }

  std::vector<fs::path> commit() {
    committed_ = true;
    return written_;
  }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
  bool committed_{false};
};

std::string q0_label(double q0) { return fmt::format("{:g}", q0); }

std::vector<std::vector<double>> absolute_frames(const SimulationHistory& h, const TrafficParams& p) {
  std::vector<std::vector<double>> out;
  out.reserve(h.density_frames.size());
  for (const auto& f : h.density_frames) {
    const double shift = f.kind == FieldKind::perturbation ? p.rho_0 : 0.0;
    std::vector<double> row(f.values);
    for (double& v : row) v += shift;
    out.push_back(std::move(row));
  }
  return out;
}

void print_summary(std::ostream& log, const RunSummary& s, const Scenario& sc) {
  fmt::print(log, "{} model, control {}, q0 = {}: final total cars {:.4f} (target {:.1f}), max density {:.3f} cars/km",
             to_string(sc.model), sc.control_enabled ? "on" : "off", q0_label(s.q0), s.final_total_cars,
             s.target_total_cars, per_m_to_per_km(s.max_density));
  if (s.time_to_target) {
    fmt::print(log, ", within 5% from t = {} s\n", *s.time_to_target);
  } else {
    fmt::print(log, ", not within 5% at the end\n");
  }
}

}  // namespace

std::vector<fs::path> write_run_artifacts(const fs::path& dir, const SimulationHistory& h, const Scenario& sc,
                                          const OutputFormats& formats) {
  const Grid1D grid = make_grid(sc.params.road_length, sc.n_cells);
  const auto density = absolute_frames(h, sc.params);
  ArtifactWriter w(dir);

  if (formats.csv) {
    w.write("density_cars_per_km.csv",
            [&](std::ostream& o) { write_csv(o, wide_table(h.times, grid.cell_centers(), density, 1000.0)); });
    w.write("speed_kph.csv",
            [&](std::ostream& o) { write_csv(o, wide_table(h.times, grid.cell_centers(), h.speed_frames, 3.6)); });
    w.write("vsl_rate.csv",
            [&](std::ostream& o) { write_csv(o, wide_table(h.times, grid.interfaces(), h.vsl_frames)); });
    w.write("dbdz_per_m.csv",
            [&](std::ostream& o) { write_csv(o, wide_table(h.times, grid.interfaces(), h.control_frames)); });
    w.write("total_cars.csv", [&](std::ostream& o) {
      Table t{{"time_s", "total_cars"}, {}};
      for (std::size_t k = 0; k < h.times.size(); ++k) t.rows.push_back({h.times[k], h.total_cars_series[k]});
      write_csv(o, t);
    });
  }
  if (formats.json) {
    w.write("summary.json", [&](std::ostream& o) { o << summary_json(summarize(h, sc), h, sc); });
  }
  if (formats.svg) {
    const std::string tag = fmt::format("{} model, control {}", to_string(sc.model), sc.control_enabled ? "on" : "off");
    std::vector<std::vector<double>> scaled_density = density;
    for (auto& row : scaled_density) {
      for (double& v : row) v *= 1000.0;
    }
    std::vector<std::vector<double>> speed = h.speed_frames;
    for (auto& row : speed) {
      for (double& v : row) v *= 3.6;
    }
    w.write("density.svg", [&](std::ostream& o) {
      write_heatmap_svg(o, grid.cell_centers(), h.times, scaled_density,
                        {"Density (" + tag + ")", "position z [m]", "time t [s]", "cars/km"});
    });
    w.write("speed.svg", [&](std::ostream& o) {
      write_heatmap_svg(o, grid.cell_centers(), h.times, speed,
                        {"Speed (" + tag + ")", "position z [m]", "time t [s]", "km/h"});
    });
    w.write("vsl.svg", [&](std::ostream& o) {
      write_heatmap_svg(o, grid.interfaces(), h.times, h.vsl_frames,
                        {"VSL rate b (" + tag + ")", "position z [m]", "time t [s]", "b"});
    });
  }
  return w.commit();
}

int cmd_simulate(const RunConfig& config, std::ostream& log) {
  const Scenario& sc = config.scenario;
  SimulationHistory history;
  try {
    history = run_simulation(sc);
  } catch (const std::exception& e) {
    fmt::print(log, "solver aborted: {}\n", e.what());
    return kSolverAbort;
  }
  print_summary(log, summarize(history, sc), sc);
  const auto files = write_run_artifacts(config.output_dir, history, sc, config.formats);
  fmt::print(log, "wrote {} files to {}\n", files.size(), config.output_dir.string());
  return kSuccess;
}

int cmd_sweep(const RunConfig& config, std::ostream& log) {
  const Scenario& sc = config.scenario;
  if (config.sweep_q0.empty()) {
    fmt::print(log, "sweep needs at least one q0 value\n");
    return kUsageError;
  }
  const std::vector<SweepMember> members = sweep_q0(sc, config.sweep_q0);

  bool failed = false;
  std::vector<const SweepMember*> good;
  for (const auto& m : members) {
    if (!m.ok()) {
      failed = true;
      fmt::print(log, "run failed: {}\n", m.error);
      continue;
    }
    Scenario member = sc;
    member.q0 = m.q0;
    print_summary(log, *m.summary, member);
    write_run_artifacts(config.output_dir / ("q0_" + q0_label(m.q0)), *m.history, member, config.formats);
    good.push_back(&m);
  }

  ArtifactWriter w(config.output_dir);
  if (!good.empty() && config.formats.csv) {
    w.write("total_cars_sweep.csv", [&](std::ostream& o) {
      Table t;
      t.header.emplace_back("time_s");
      for (const auto* m : good) t.header.push_back("q0=" + q0_label(m->q0));
      const auto& times = good.front()->history->times;
      for (std::size_t k = 0; k < times.size(); ++k) {
        std::vector<double> row{times[k]};
        for (const auto* m : good) row.push_back(m->history->total_cars_series.at(k));
        t.rows.push_back(std::move(row));
      }
      write_csv(o, t);
    });
  }
  if (config.formats.json) {
    w.write("sweep_summary.json", [&](std::ostream& o) { o << sweep_summary_json(members, sc); });
  }
  if (!good.empty() && config.formats.svg) {
    std::vector<LineSeries> series;
    for (const auto* m : good) series.push_back({"Q0 = " + q0_label(m->q0), m->history->times, m->history->total_cars_series});
    w.write("total_cars_sweep.svg", [&](std::ostream& o) {
      write_line_plot_svg(o, series,
                          {fmt::format("Total cars, {} model", to_string(sc.model)), "time t [s]", "cars", ""});
    });
  }
  w.commit();
  return failed ? kSolverAbort : kSuccess;
}

int cmd_riccati(const RunConfig& config, std::ostream& log) {
  const Scenario& sc = config.scenario;
  const std::size_t n = config.riccati_points;
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = sc.params.road_length * static_cast<double>(i) / static_cast<double>(n - 1);

  std::vector<RiccatiProblem> problems;
  for (double q0 : config.riccati_q0) problems.push_back(assemble_problem(sc.params, q0, sc.r0));

  Table t;
  t.header.emplace_back("z_m");
  for (const auto& p : problems) t.header.push_back("phi_q0=" + q0_label(p.q0));
  for (const auto& p : problems) t.header.push_back("gain_q0=" + q0_label(p.q0));
  std::vector<LineSeries> series;
  for (const auto& p : problems) series.push_back({"Q0 = " + q0_label(p.q0), z, {}});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row{z[i]};
    for (std::size_t k = 0; k < problems.size(); ++k) {
      const double phi = phi_closed_form(z[i], problems[k]);
      row.push_back(phi);
      series[k].y.push_back(phi);
    }
    for (const auto& p : problems) row.push_back(feedback_gain(z[i], p));
    t.rows.push_back(std::move(row));
  }

  ArtifactWriter w(config.output_dir);
  if (config.formats.csv) w.write("riccati.csv", [&](std::ostream& o) { write_csv(o, t); });
  if (config.formats.svg) {
    w.write("riccati_phi.svg", [&](std::ostream& o) {
      write_line_plot_svg(o, series, {"State feedback function Phi(z)", "position z [m]", "Phi", ""});
    });
  }
  w.commit();
  for (const auto& p : problems) {
    fmt::print(log, "q0 = {}: Phi(0) = {:.6e}, K0(0) = {:.6e}, Phi(L) = {}\n", q0_label(p.q0), phi_closed_form(0.0, p),
               feedback_gain(0.0, p), phi_closed_form(p.length, p));
  }
  return kSuccess;
}

int cmd_verify(std::ostream& log, std::size_t n_coarse) {
  bool all = true;
  for (const CheckResult& r : run_verification_suite(n_coarse)) {
    all = all && r.passed;
    fmt::print(log, "[{}] {}: measured {:.6g} ({})\n", r.passed ? "PASS" : "FAIL", r.name, r.measured, r.detail);
  }
  return all ? kSuccess : kVerificationFailed;
}

}  // namespace lwrvsl::io
