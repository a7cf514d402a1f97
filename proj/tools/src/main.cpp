#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "lwrvsl/io/commands.hpp"
#include "lwrvsl/io/config.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::string> model;
  std::optional<std::string> control;
  std::vector<double> q0;
  std::optional<std::string> out;
  std::optional<std::string> formats;
};

void add_run_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "YAML config file")->check(CLI::ExistingFile);
  cmd->add_option("--model", o.model, "Plant model")->check(CLI::IsMember({"linear", "nonlinear"}));
  cmd->add_option("--control", o.control, "Enable the LQ feedback")->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--q0", o.q0, "State weight Q0 (repeatable)");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--formats", o.formats, "Comma-separated subset of csv,json,svg");
}

lwrvsl::io::RunConfig resolve(const Overrides& o, bool sweep_defaults_control_on) {
  using namespace lwrvsl;
  io::RunConfig cfg = o.config_path.empty() ? io::parse_config("") : io::load_config(o.config_path);
  if (o.model) cfg.scenario.model = *o.model == "linear" ? Model::linear : Model::nonlinear;
  if (o.control) {
    cfg.scenario.control_enabled = *o.control == "on";
  } else if (sweep_defaults_control_on) {
    cfg.scenario.control_enabled = true;
  }
  if (!o.q0.empty()) {
    cfg.scenario.q0 = o.q0.back();
    cfg.sweep_q0 = o.q0;
    cfg.riccati_q0 = o.q0;
  }
  if (o.out) cfg.output_dir = *o.out;
  if (o.formats) cfg.formats = io::parse_formats(*o.formats);
  io::validate(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variable-speed-limit LQ control of the LWR traffic model"};
  app.require_subcommand(1);

  Overrides simulate_opts, sweep_opts, riccati_opts;
  auto* simulate = app.add_subcommand("simulate", "Run one closed- or open-loop simulation");
  add_run_flags(simulate, simulate_opts);
  auto* sweep = app.add_subcommand("sweep", "Run one simulation per Q0 value (control on unless --control off)");
  add_run_flags(sweep, sweep_opts);
  auto* riccati = app.add_subcommand("riccati", "Tabulate Phi(z) and the feedback gain for each Q0");
  add_run_flags(riccati, riccati_opts);
  std::size_t n_coarse = 100;
  auto* verify = app.add_subcommand("verify", "Run the numerical self-checks");
  verify->add_option("--n-coarse", n_coarse, "Coarse grid of the convergence study")->check(CLI::Range(4, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? lwrvsl::io::kSuccess : lwrvsl::io::kUsageError;
  }

  try {
    if (*simulate) {
      if (simulate_opts.q0.size() > 1) throw lwrvsl::io::ConfigError("simulate takes a single --q0");
      return lwrvsl::io::cmd_simulate(resolve(simulate_opts, false), std::cout);
    }
    if (*sweep) return lwrvsl::io::cmd_sweep(resolve(sweep_opts, true), std::cout);
    if (*riccati) return lwrvsl::io::cmd_riccati(resolve(riccati_opts, false), std::cout);
    if (*verify) return lwrvsl::io::cmd_verify(std::cout, n_coarse);
  } catch (const lwrvsl::io::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return lwrvsl::io::kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return lwrvsl::io::kSolverAbort;
  }
  return lwrvsl::io::kUsageError;
}
