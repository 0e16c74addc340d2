#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "dlwr/config.hpp"
#include "dlwr/diagnostics.hpp"
#include "dlwr/errors.hpp"
#include "dlwr/experiments.hpp"
#include "dlwr/solver.hpp"
#include "dlwr/version.hpp"

namespace dlwr {

// Shortest-round-trip style decimal rendering at 17 significant digits:
// distinct doubles always render differently, and reading the text back
// recovers the exact bit pattern.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace iodetail {

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

inline void check_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace iodetail

// Density snapshots, one row per recorded time. The header row names the
// time column and then each cell-center coordinate.
inline void write_density_csv(
    const std::string& path, const GridSpec& grid,
    const std::vector<std::pair<double, DensityField>>& snapshots) {
  auto out = iodetail::open_out(path);
  out << "t";
  for (int i = 0; i < grid.nx; ++i)
    out << "," << format_double(grid.cell_center(i));
  out << "\n";
  for (const auto& [time, rho] : snapshots) {
    out << format_double(time);
    for (double v : rho) out << "," << format_double(v);
    out << "\n";
  }
  iodetail::check_write(out, path);
}

// Per-step diagnostics table; boolean flags are written as 1/0.
inline void write_diagnostics_csv(const std::string& path,
                                  const std::vector<StepDiagnostics>& rows) {
  auto out = iodetail::open_out(path);
  out << "step,time,dt,mass,rho_min,rho_max,tv_space,tv_time_inc,"
         "linf_ok,tv_ok,overshoot\n";
  for (const auto& r : rows) {
    out << r.step << "," << format_double(r.time) << "," << format_double(r.dt)
        << "," << format_double(r.mass) << "," << format_double(r.rho_min)
        << "," << format_double(r.rho_max_val) << ","
        << format_double(r.tv_space) << ","
        << format_double(r.tv_time_increment) << "," << (r.linf_ok ? 1 : 0)
        << "," << (r.tv_space_ok ? 1 : 0) << "," << (r.overshoot ? 1 : 0)
        << "\n";
  }
  iodetail::check_write(out, path);
}

inline nlohmann::json termination_to_json(const Termination& term) {
  nlohmann::json t;
  t["status"] = termination_status_string(term);
  if (term.kind != TerminationKind::Completed) t["step"] = term.step;
  return t;
}

// Run manifest: the resolved configuration echo plus artifact names,
// termination and headline metrics. The echo alone is enough to re-run:
// feeding it back through the run subcommand reproduces the artifacts
// byte for byte.
inline void write_manifest(const std::string& path, const FullConfig& config,
                           int snapshot_every, const Trajectory& traj,
                           double rho_c_for_amplitude = -1.0) {
  nlohmann::json m;
  m["version"] = version_string;
  m["config"] = config_to_json(config, /*resolve_defaults=*/true);
  m["snapshot_every"] = snapshot_every;
  m["artifacts"] = {{"density_csv", "density.csv"},
                    {"diagnostics_csv", "diagnostics.csv"}};
  m["termination"] = termination_to_json(traj.termination);

  const DensityField& last = traj.final_field();
  nlohmann::json headline;
  headline["final_time"] = traj.final_time();
  headline["steps"] = traj.final_step();
  headline["final_mass"] = total_mass(last, config.solver.grid);
  headline["final_amplitude"] = amplitude(last);
  headline["wave_count"] = count_waves(last, 0.05);
  if (auto os = first_overshoot_step(traj))
    headline["first_overshoot_step"] = *os;
  else
    headline["first_overshoot_step"] = nullptr;
  if (rho_c_for_amplitude > 0.0)
    headline["reaches_rho_c"] = field_max(last) >= rho_c_for_amplitude;
  m["headline"] = headline;

  auto out = iodetail::open_out(path);
  out << m.dump(2) << "\n";
  iodetail::check_write(out, path);
}

// Delay-sweep table. overshoot_step stays blank for runs that never
// exceeded rho_max; sg_flag is 1/0; status is the termination word or
// "error" with the message in the manifest.
inline void write_sweep_csv(const std::string& path,
                            const std::vector<SweepRow>& rows) {
  auto out = iodetail::open_out(path);
  out << "delay_steps,final_amplitude,wave_count,overshoot_step,sg_flag,"
         "status\n";
  for (const auto& r : rows) {
    out << r.delay_steps << "," << format_double(r.final_amplitude) << ","
        << r.wave_count << ",";
    if (r.overshoot_step) out << *r.overshoot_step;
    out << "," << (r.sg_flag ? 1 : 0) << "," << r.status << "\n";
  }
  iodetail::check_write(out, path);
}

inline void write_sweep_manifest(const std::string& path,
                                 const std::string& preset_name,
                                 const std::vector<SweepRow>& rows) {
  nlohmann::json m;
  m["version"] = version_string;
  m["preset"] = preset_name;
  m["artifacts"] = {{"sweep_csv", "sweep.csv"}};
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["delay_steps"] = r.delay_steps;
    row["final_amplitude"] = r.final_amplitude;
    row["wave_count"] = r.wave_count;
    if (r.overshoot_step)
      row["overshoot_step"] = *r.overshoot_step;
    else
      row["overshoot_step"] = nullptr;
    row["sg_flag"] = r.sg_flag;
    row["status"] = r.status;
    if (!r.error.empty()) row["error"] = r.error;
    arr.push_back(row);
  }
  m["rows"] = arr;
  auto out = iodetail::open_out(path);
  out << m.dump(2) << "\n";
  iodetail::check_write(out, path);
}

// Side-by-side amplitude traces of a delayed run and its zero-delay twin.
inline void write_comparison_csv(const std::string& path,
                                 const CompareReport& rep) {
  auto out = iodetail::open_out(path);
  out << "step,time,amp_delayed,amp_undelayed\n";
  const std::size_t n =
      std::min(rep.amp_delayed.size(), rep.amp_undelayed.size());
  for (std::size_t i = 0; i < n; ++i) {
    out << i << "," << format_double(rep.time[i]) << ","
        << format_double(rep.amp_delayed[i]) << ","
        << format_double(rep.amp_undelayed[i]) << "\n";
  }
  iodetail::check_write(out, path);
}

inline void write_comparison_json(const std::string& path,
                                  const std::string& preset_name,
                                  const CompareReport& rep) {
  nlohmann::json m;
  m["version"] = version_string;
  m["preset"] = preset_name;
  m["initial_amplitude"] = rep.initial_amplitude;
  m["final_amplitude_delayed"] = rep.final_amp_delayed;
  m["final_amplitude_undelayed"] = rep.final_amp_undelayed;
  if (std::isfinite(rep.ratio))
    m["amplification_ratio"] = rep.ratio;
  else
    m["amplification_ratio"] = "inf";
  m["termination_delayed"] = termination_status_string(rep.termination_delayed);
  m["termination_undelayed"] =
      termination_status_string(rep.termination_undelayed);
  auto out = iodetail::open_out(path);
  out << m.dump(2) << "\n";
  iodetail::check_write(out, path);
}

}  // namespace dlwr
