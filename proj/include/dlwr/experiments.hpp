#pragma once

#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dlwr/diagnostics.hpp"
#include "dlwr/errors.hpp"
#include "dlwr/solver.hpp"

namespace dlwr {

// ---------------------------------------------------------------------------
// Initial conditions

inline DensityField ic_sinusoidal(const GridSpec& g, int k) {
  if (k < 1) throw ConfigError("ic: sinusoidal mode count must be >= 1");
  DensityField f(static_cast<std::size_t>(g.nx));
  for (int i = 0; i < g.nx; ++i)
    f[static_cast<std::size_t>(i)] =
        5.0 / 8.0 +
        (1.0 / 8.0) *
            std::sin(2.0 * k * std::numbers::pi * g.cell_center(i));
  return f;
}

inline DensityField ic_riemann(const GridSpec& g, double left, double right,
                               double x_jump) {
  if (!(left >= 0.0 && left <= 1.0 && right >= 0.0 && right <= 1.0))
    throw ConfigError("ic: Riemann states must lie in [0, 1]");
  DensityField f(static_cast<std::size_t>(g.nx));
  for (int i = 0; i < g.nx; ++i)
    f[static_cast<std::size_t>(i)] = g.cell_center(i) < x_jump ? left : right;
  return f;
}

// Ambient field with a raised plateau over [lo, hi]. If the interval is too
// narrow to contain any cell center, the single cell containing its midpoint
// is raised instead (snap rule), so a sub-cell perturbation is never lost.
inline DensityField ic_cell_perturbation(const GridSpec& g, double ambient,
                                         double bump, double lo, double hi) {
  if (!(ambient >= 0.0 && ambient <= 1.0 && bump >= 0.0 && bump <= 1.0))
    throw ConfigError("ic: densities must lie in [0, 1]");
  if (!(lo < hi)) throw ConfigError("ic: perturbation interval is empty");
  if (lo < g.a || hi > g.b)
    throw ConfigError("ic: perturbation interval [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "] lies outside the domain");
  DensityField f(static_cast<std::size_t>(g.nx), ambient);
  bool hit = false;
  for (int i = 0; i < g.nx; ++i) {
    const double x = g.cell_center(i);
    if (x >= lo && x <= hi) {
      f[static_cast<std::size_t>(i)] = bump;
      hit = true;
    }
  }
  if (!hit) {
    const double mid = 0.5 * (lo + hi);
    int idx = static_cast<int>(std::floor((mid - g.a) / g.dx));
    idx = std::max(0, std::min(g.nx - 1, idx));
    f[static_cast<std::size_t>(idx)] = bump;
  }
  return f;
}

struct IcSpec {
  enum class Kind { Sinusoidal, Riemann, CellPerturbation, Constant };
  Kind kind = Kind::Constant;
  int k = 1;                                  // sinusoidal
  double left = 0.0, right = 0.0, x_jump = 0.0;  // riemann
  double ambient = 0.0, bump = 0.0, lo = 0.0, hi = 0.0;  // cell perturbation
  double value = 0.0;                         // constant
};

inline DensityField make_ic(const IcSpec& ic, const GridSpec& g) {
  switch (ic.kind) {
    case IcSpec::Kind::Sinusoidal:
      return ic_sinusoidal(g, ic.k);
    case IcSpec::Kind::Riemann:
      return ic_riemann(g, ic.left, ic.right, ic.x_jump);
    case IcSpec::Kind::CellPerturbation:
      return ic_cell_perturbation(g, ic.ambient, ic.bump, ic.lo, ic.hi);
    case IcSpec::Kind::Constant:
      if (!(ic.value >= 0.0))
        throw ConfigError("ic: constant density must be nonnegative");
      return DensityField(static_cast<std::size_t>(g.nx), ic.value);
  }
  throw ConfigError("ic: unknown kind");
}

// ---------------------------------------------------------------------------
// Presets

struct Preset {
  std::string name;
  SolverConfig solver;
  VelocityModel velocity;
  IcSpec ic;
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "test0",    "test0-lwr",     "test0-overshoot", "test1-k1",
      "test1-k2", "test2",         "test2-lowdelay",  "trigger"};
  return names;
}

// The named experiments. The sinusoidal family runs on [0,1] with 50 cells
// and dt = 0.01; the delayed run and its overshoot twin stop at t = 1.7,
// inside the window where delay 15 stays below the maximum density while
// delay 18 has already exceeded it. The undelayed twin runs to t = 3, by
// which time its perturbation has decayed into noise. The congestion pair
// uses the cut velocity law on a Riemann datum. The triggering run places a
// one-cell perturbation on a long road and stops at t = 7.2, when the
// leading congestion wave spawned by the perturbation has walked upstream
// across the domain.
inline Preset preset(const std::string& name) {
  Preset p;
  p.name = name;

  const auto sinusoidal_family = [&](int delay, int k, double t_f) {
    p.solver.grid = grid_new(0.0, 1.0, 50);
    p.solver.bc = periodic_bc();
    p.solver.t_delay_steps = delay;
    p.solver.dt_policy = FixedDt{0.01};
    p.solver.stop = StopTime{t_f};
    p.solver.feasibility = Feasibility::WarnOnly;
    p.velocity = greenshields(1.0, 1.0);
    p.ic.kind = IcSpec::Kind::Sinusoidal;
    p.ic.k = k;
  };
  const auto congestion_family = [&](int delay) {
    p.solver.grid = grid_new(0.0, 1.0, 50);
    p.solver.bc = periodic_bc();
    p.solver.t_delay_steps = delay;
    p.solver.dt_policy = FixedDt{0.01};
    p.solver.stop = StopTime{3.0};
    p.solver.feasibility = Feasibility::WarnOnly;
    p.velocity = cut_piecewise(1.0, 0.2, 0.75);
    p.ic.kind = IcSpec::Kind::Riemann;
    p.ic.left = 0.6;
    p.ic.right = 0.1;
    p.ic.x_jump = 0.5;
  };

  if (name == "test0") {
    sinusoidal_family(15, 1, 1.7);
  } else if (name == "test0-lwr") {
    sinusoidal_family(0, 1, 3.0);
  } else if (name == "test0-overshoot") {
    sinusoidal_family(18, 1, 1.7);
  } else if (name == "test1-k1") {
    sinusoidal_family(16, 1, 3.0);
  } else if (name == "test1-k2") {
    sinusoidal_family(22, 2, 3.0);
  } else if (name == "test2") {
    congestion_family(10);
  } else if (name == "test2-lowdelay") {
    congestion_family(4);
  } else if (name == "trigger") {
    p.solver.grid = grid_new(0.0, 2.0, 100);
    p.solver.bc = dirichlet_bc(0.2, 0.2);
    p.solver.t_delay_steps = 21;
    p.solver.dt_policy = FixedDt{0.009};
    p.solver.stop = StopTime{7.2};
    p.solver.feasibility = Feasibility::WarnOnly;
    p.velocity = cut_piecewise(1.0, 0.2, 0.75);
    p.ic.kind = IcSpec::Kind::CellPerturbation;
    p.ic.ambient = 0.2;
    p.ic.bump = 0.35;
    p.ic.lo = 1.34;
    p.ic.hi = 1.342;
  } else {
    std::string valid;
    for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw ConfigError("unknown preset '" + name + "'; valid names: " + valid);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Comparison and sweep

struct CompareReport {
  std::vector<double> time;
  std::vector<double> amp_delayed;
  std::vector<double> amp_undelayed;
  double initial_amplitude = 0.0;
  double final_amp_delayed = 0.0;
  double final_amp_undelayed = 0.0;
  double ratio = 0.0;
  Termination termination_delayed;
  Termination termination_undelayed;
};

// Run a preset next to its zero-delay twin (same grid, datum, velocity, dt,
// stop) and report the amplitude histories. The per-step amplitude lists are
// aligned only while both runs are alive; each carries its own step count.
inline CompareReport compare_delayed_undelayed(const Preset& base,
                                               int snapshot_every = 5) {
  Preset twin = base;
  twin.solver.t_delay_steps = 0;

  const DensityField rho0 = make_ic(base.ic, base.solver.grid);
  const Trajectory a = run(base.solver, rho0, base.velocity, snapshot_every);
  const Trajectory b = run(twin.solver, rho0, twin.velocity, snapshot_every);

  CompareReport r;
  r.initial_amplitude = amplitude(rho0);
  for (const auto& d : a.diagnostics) {
    r.time.push_back(d.time);
    r.amp_delayed.push_back(d.rho_max_val - d.rho_min);
  }
  for (const auto& d : b.diagnostics)
    r.amp_undelayed.push_back(d.rho_max_val - d.rho_min);
  r.final_amp_delayed = r.amp_delayed.back();
  r.final_amp_undelayed = r.amp_undelayed.back();
  if (r.final_amp_undelayed == 0.0)
    r.ratio = r.final_amp_delayed == 0.0
                  ? 1.0
                  : std::numeric_limits<double>::infinity();
  else
    r.ratio = r.final_amp_delayed / r.final_amp_undelayed;
  r.termination_delayed = a.termination;
  r.termination_undelayed = b.termination;
  return r;
}

struct SweepRow {
  int delay_steps = 0;
  double final_amplitude = 0.0;
  int wave_count = 0;
  std::optional<long> overshoot_step;
  bool sg_flag = false;
  std::string status;
  std::string error;  // nonempty iff status == "error"
};

inline std::string termination_status_string(const Termination& t) {
  switch (t.kind) {
    case TerminationKind::Completed:
      return "completed";
    case TerminationKind::FeasibilityAbort:
      return "feasibility_abort";
    case TerminationKind::CflCollapse:
      return "cfl_collapse";
  }
  return "unknown";
}

// One run per delay value (in parallel). A run "shows stop-and-go" when the
// perturbation survives: final amplitude at least the initial amplitude.
inline std::vector<SweepRow> delay_sweep(const Preset& base,
                                         const std::vector<int>& delays) {
  if (delays.empty())
    throw ConfigError("sweep: need at least one delay value");

  const auto one = [&base](int delay) {
    SweepRow row;
    row.delay_steps = delay;
    try {
      Preset p = base;
      p.solver.t_delay_steps = delay;
      const DensityField rho0 = make_ic(p.ic, p.solver.grid);
      const double amp0 = amplitude(rho0);
      const Trajectory traj = run(p.solver, rho0, p.velocity);
      row.final_amplitude = amplitude(traj.final_field());
      row.wave_count = count_waves(traj.final_field(), 0.05);
      row.overshoot_step = first_overshoot_step(traj);
      row.sg_flag = row.final_amplitude >= amp0;
      row.status = termination_status_string(traj.termination);
    } catch (const std::exception& e) {
      row.status = "error";
      row.error = e.what();
    }
    return row;
  };

  std::vector<std::future<SweepRow>> futures;
  futures.reserve(delays.size());
  for (int d : delays)
    futures.push_back(std::async(std::launch::async, one, d));
  std::vector<SweepRow> rows;
  rows.reserve(delays.size());
  for (auto& f : futures) rows.push_back(f.get());
  return rows;
}

}  // namespace dlwr
