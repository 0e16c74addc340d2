#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dlwr/config.hpp"
#include "dlwr/experiments.hpp"
#include "dlwr/io.hpp"
#include "dlwr/solver.hpp"

namespace dlwr {

namespace clidetail {

// "K1..K2" (K1 <= K2) -> {K1, ..., K2}.
inline std::vector<int> parse_delay_range(const std::string& text) {
  const auto pos = text.find("..");
  auto as_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("sweep: bad delay range '" + text +
                        "' (expected K1..K2 with integers)");
    }
  };
  if (pos == std::string::npos) return {as_int(text)};
  const int lo = as_int(text.substr(0, pos));
  const int hi = as_int(text.substr(pos + 2));
  if (lo > hi || lo < 0)
    throw ConfigError("sweep: bad delay range '" + text +
                      "' (need 0 <= K1 <= K2)");
  std::vector<int> out;
  for (int d = lo; d <= hi; ++d) out.push_back(d);
  return out;
}

inline int exit_code_for(const Termination& t) {
  switch (t.kind) {
    case TerminationKind::Completed:
      return 0;
    case TerminationKind::FeasibilityAbort:
      return 2;
    case TerminationKind::CflCollapse:
      return 3;
  }
  return 1;
}

// Run one configuration and write density.csv, diagnostics.csv and
// manifest.json into out_dir. Returns the termination exit code.
inline int execute_run(const FullConfig& config, const std::string& out_dir,
                       int snapshot_every = 5) {
  std::filesystem::create_directories(out_dir);
  const DensityField rho0 = make_ic(config.ic, config.solver.grid);
  const Trajectory traj =
      run(config.solver, rho0, config.velocity, snapshot_every);
  const std::filesystem::path d(out_dir);
  write_density_csv((d / "density.csv").string(), config.solver.grid,
                    traj.snapshots);
  write_diagnostics_csv((d / "diagnostics.csv").string(), traj.diagnostics);
  const double rho_c = config.velocity.kind == VelocityKind::CutPiecewise
                           ? config.velocity.rho_c
                           : -1.0;
  write_manifest((d / "manifest.json").string(), config, snapshot_every, traj,
                 rho_c);
  return exit_code_for(traj.termination);
}

}  // namespace clidetail

inline int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"finite-difference solver for the traffic-flow model with a "
               "reaction delay in the velocity"};
  app.require_subcommand(1);

  std::string run_config, run_out;
  auto* cmd_run = app.add_subcommand("run", "run a configuration file");
  cmd_run->add_option("--config", run_config, "configuration file (JSON)")
      ->required();
  cmd_run->add_option("--out", run_out, "output directory")->required();

  std::string preset_name, preset_out;
  std::optional<double> t_final_override;
  std::optional<int> delay_override;
  auto* cmd_preset = app.add_subcommand("preset", "run a named experiment");
  cmd_preset->add_option("name", preset_name, "preset name")->required();
  cmd_preset->add_option("--out", preset_out, "output directory")->required();
  cmd_preset->add_option("--t-final", t_final_override,
                         "override the stop time");
  cmd_preset->add_option("--delay", delay_override,
                         "override the delay step count");

  std::string cmp_preset, cmp_out;
  auto* cmd_compare = app.add_subcommand(
      "compare", "run a preset next to its zero-delay twin");
  cmd_compare->add_option("--preset", cmp_preset, "preset name")->required();
  cmd_compare->add_option("--out", cmp_out, "output directory")->required();

  std::string sweep_preset, sweep_delays, sweep_out;
  auto* cmd_sweep =
      app.add_subcommand("sweep", "run a preset across a range of delays");
  cmd_sweep->add_option("--preset", sweep_preset, "preset name")->required();
  cmd_sweep->add_option("--delays", sweep_delays, "delay range K1..K2")
      ->required();
  cmd_sweep->add_option("--out", sweep_out, "output directory")->required();

  // CLI11 wants argv-style reversed input.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    // --help lands here too; it is not an error.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (cmd_run->parsed()) {
      return clidetail::execute_run(parse_config(run_config), run_out);
    }

    if (cmd_preset->parsed()) {
      Preset p = preset(preset_name);
      if (delay_override) p.solver.t_delay_steps = *delay_override;
      if (t_final_override) p.solver.stop = StopTime{*t_final_override};
      FullConfig c = preset_config(p);
      validate_solver_config(c.solver, c.velocity);
      validate_fixed_dt(c.solver, make_ic(c.ic, c.solver.grid));
      return clidetail::execute_run(c, preset_out);
    }

    if (cmd_compare->parsed()) {
      const Preset base = preset(cmp_preset);
      Preset twin = base;
      twin.solver.t_delay_steps = 0;
      const std::filesystem::path d(cmp_out);
      std::filesystem::create_directories(d);
      const int rc_delayed =
          clidetail::execute_run(preset_config(base), (d / "delayed").string());
      const int rc_undelayed = clidetail::execute_run(
          preset_config(twin), (d / "undelayed").string());
      const CompareReport rep = compare_delayed_undelayed(base);
      write_comparison_csv((d / "comparison.csv").string(), rep);
      write_comparison_json((d / "comparison.json").string(), base.name, rep);
      return std::max(rc_delayed, rc_undelayed);
    }

    if (cmd_sweep->parsed()) {
      const Preset base = preset(sweep_preset);
      const std::vector<int> delays =
          clidetail::parse_delay_range(sweep_delays);
      const std::vector<SweepRow> rows = delay_sweep(base, delays);
      const std::filesystem::path d(sweep_out);
      std::filesystem::create_directories(d);
      write_sweep_csv((d / "sweep.csv").string(), rows);
      write_sweep_manifest((d / "manifest.json").string(), base.name, rows);
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

inline int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args);
}

}  // namespace dlwr
