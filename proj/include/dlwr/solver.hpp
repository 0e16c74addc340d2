#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dlwr/boundary.hpp"
#include "dlwr/diagnostics.hpp"
#include "dlwr/errors.hpp"
#include "dlwr/field.hpp"
#include "dlwr/grid.hpp"
#include "dlwr/history.hpp"
#include "dlwr/velocity.hpp"

namespace dlwr {

struct FixedDt {
  double dt = 0.0;
};
struct AdaptiveDt {
  double safety = 1.0;
};
struct StopSteps {
  long n = 0;
};
struct StopTime {
  double t_f = 0.0;
};

enum class Feasibility { WarnOnly, Abort };

struct SolverConfig {
  GridSpec grid;
  BoundaryCondition bc;
  int t_delay_steps = 0;
  std::variant<FixedDt, AdaptiveDt> dt_policy = FixedDt{0.0};
  std::variant<StopSteps, StopTime> stop = StopSteps{0};
  Feasibility feasibility = Feasibility::WarnOnly;
};

enum class TerminationKind { Completed, FeasibilityAbort, CflCollapse };

struct Termination {
  TerminationKind kind = TerminationKind::Completed;
  long step = -1;  // step at which an abort/collapse fired
};

struct Trajectory {
  std::vector<std::pair<double, DensityField>> snapshots;
  std::vector<StepDiagnostics> diagnostics;
  Termination termination;

  const DensityField& final_field() const { return snapshots.back().second; }
  double final_time() const { return snapshots.back().first; }
  long final_step() const { return diagnostics.back().step; }
};

// Delay-aware CFL step: dt = safety * dx / M with M the larger sup-norm of
// the current and delayed fields, floored at safety * dx near vacuum.
inline double cfl_dt(const DensityField& current, const DensityField& delayed,
                     const GridSpec& grid, double safety) {
  const double m =
      std::max(field_sup_abs(current), field_sup_abs(delayed));
  if (m < 1e-12) return safety * grid.dx;
  return safety * grid.dx / m;
}

// One step of the averaged scheme with the flux velocity read from the
// delayed field:
//   rho_i' = (rho_{i+1} + rho_{i-1})/2
//            - dt/(2 dx) (V(d_{i+1}) rho_{i+1} - V(d_{i-1}) rho_{i-1}).
inline DensityField lf_step(const DensityField& current,
                            const DensityField& delayed, double dt,
                            const GridSpec& grid, const VelocityModel& model,
                            const BoundaryCondition& bc) {
  if (current.size() != delayed.size() ||
      current.size() != static_cast<std::size_t>(grid.nx))
    throw std::logic_error("lf_step: field length mismatch");
  if (!(dt > 0.0)) throw std::logic_error("lf_step: dt must be positive");
  const double lam = dt / (2.0 * grid.dx);
  DensityField next(current.size());
  for (int i = 0; i < grid.nx; ++i) {
    const auto [rm, rp] = neighbors(current, i, bc);
    const auto [dm, dp] = neighbors(delayed, i, bc);
    const double out =
        0.5 * (rp + rm) - lam * (flux(model, dp, rp) - flux(model, dm, rm));
    if (!std::isfinite(out))
      throw NumericalError("non-finite density produced at cell " +
                           std::to_string(i));
    next[static_cast<std::size_t>(i)] = out;
  }
  return next;
}

// Construction-time checks that do not need the initial datum.
inline void validate_solver_config(const SolverConfig& cfg,
                                   const VelocityModel& model) {
  if (cfg.t_delay_steps < 0)
    throw ConfigError("config: delay_steps must be nonnegative");
  if (const auto* f = std::get_if<FixedDt>(&cfg.dt_policy)) {
    if (!(f->dt > 0.0)) throw ConfigError("config: fixed dt must be positive");
  } else {
    const double s = std::get<AdaptiveDt>(cfg.dt_policy).safety;
    if (!(s > 0.0 && s <= 1.0))
      throw ConfigError("config: adaptive safety factor must lie in (0, 1]");
  }
  if (const auto* st = std::get_if<StopSteps>(&cfg.stop)) {
    if (st->n < 0) throw ConfigError("config: step budget must be nonnegative");
  } else if (!(std::get<StopTime>(cfg.stop).t_f > 0.0)) {
    throw ConfigError("config: final time must be positive");
  }
  if (cfg.bc.kind == BoundaryCondition::Kind::Dirichlet) {
    if (!(cfg.bc.left >= 0.0 && cfg.bc.left <= model.rho_max &&
          cfg.bc.right >= 0.0 && cfg.bc.right <= model.rho_max))
      throw ConfigError(
          "config: Dirichlet boundary values must lie in [0, rho_max]");
  }
}

// A fixed dt must satisfy the positivity CFL against the initial datum.
inline void validate_fixed_dt(const SolverConfig& cfg,
                              const DensityField& rho0) {
  const auto* f = std::get_if<FixedDt>(&cfg.dt_policy);
  if (!f) return;
  const double sup = std::max(field_sup_abs(rho0), 1e-12);
  const double bound = cfg.grid.dx / sup;
  if (f->dt > bound)
    throw ConfigError("config: fixed dt " + std::to_string(f->dt) +
                      " violates the initial CFL bound dx / sup|rho0| = " +
                      std::to_string(bound));
}

namespace detail {

inline StepDiagnostics initial_diagnostics(const DensityField& rho0,
                                           const SolverConfig& cfg,
                                           const VelocityModel& model) {
  StepDiagnostics d;
  d.step = 0;
  d.time = 0.0;
  d.dt = 0.0;
  d.mass = total_mass(rho0, cfg.grid);
  d.rho_min = field_min(rho0);
  d.rho_max_val = field_max(rho0);
  d.tv_space = tv_space(rho0, cfg.bc);
  d.tv_time_increment = 0.0;
  d.linf_ok = true;
  d.tv_space_ok = true;
  d.overshoot = d.rho_max_val > model.rho_max;
  return d;
}

}  // namespace detail

// Advance from rho0 until the stop condition, recording diagnostics every
// step and snapshots every `snapshot_every` steps plus the initial and final
// states. The feasibility policy fires when max rho exceeds rho_max.
inline Trajectory run(const SolverConfig& cfg, const DensityField& rho0,
                      const VelocityModel& model, int snapshot_every = 5) {
  if (rho0.size() != static_cast<std::size_t>(cfg.grid.nx))
    throw ConfigError("run: initial datum does not match the grid");
  if (snapshot_every < 1)
    throw ConfigError("run: snapshot cadence must be at least 1");
  if (!field_finite(rho0))
    throw NumericalError("run: non-finite initial datum");
  validate_solver_config(cfg, model);
  validate_fixed_dt(cfg, rho0);

  const bool fixed = std::holds_alternative<FixedDt>(cfg.dt_policy);
  const double fixed_dt = fixed ? std::get<FixedDt>(cfg.dt_policy).dt : 0.0;
  const double safety =
      fixed ? 1.0 : std::get<AdaptiveDt>(cfg.dt_policy).safety;

  Trajectory traj;
  traj.diagnostics.push_back(detail::initial_diagnostics(rho0, cfg, model));
  traj.snapshots.emplace_back(0.0, rho0);
  long last_snapshot_step = 0;

  HistoryBuffer hist(rho0, cfg.t_delay_steps);
  DensityField cur = rho0;
  long n = 0;
  double t = 0.0;

  const auto stop_reached = [&]() {
    if (const auto* ss = std::get_if<StopSteps>(&cfg.stop)) return n >= ss->n;
    return t >= std::get<StopTime>(cfg.stop).t_f - 1e-9;
  };

  while (!stop_reached()) {
    const DensityField& dly = hist.delayed();

    double dtn;
    if (fixed) {
      dtn = fixed_dt;
    } else {
      dtn = cfl_dt(cur, dly, cfg.grid, safety);
      if (dtn < 1e-12 * cfg.grid.dx) {
        traj.termination = {TerminationKind::CflCollapse, n + 1};
        break;
      }
      if (const auto* st = std::get_if<StopTime>(&cfg.stop)) {
        if (t + dtn > st->t_f) dtn = st->t_f - t;
        if (!(dtn > 0.0)) break;
      }
    }

    // Sup-norms of the inputs, needed by the bound checks afterwards.
    const double cur_sup = field_sup_abs(cur);
    const double dly_sup = field_sup_abs(dly);
    const double tv_cur = tv_space(cur, cfg.bc);
    const double tv_dly = tv_space(dly, cfg.bc);

    DensityField next;
    try {
      next = lf_step(cur, dly, dtn, cfg.grid, model, cfg.bc);
    } catch (const NumericalError& e) {
      throw NumericalError("step " + std::to_string(n + 1) + ": " + e.what());
    }

    ++n;
    t = fixed ? static_cast<double>(n) * fixed_dt : t + dtn;

    StepDiagnostics d;
    d.step = n;
    d.time = t;
    d.dt = dtn;
    d.mass = total_mass(next, cfg.grid);
    d.rho_min = field_min(next);
    d.rho_max_val = field_max(next);
    d.tv_space = tv_space(next, cfg.bc);
    d.tv_time_increment = tv_time_increment(cur, next);
    d.linf_ok =
        check_linf_bound(field_sup_abs(next), cur_sup, dly_sup);
    d.tv_space_ok = check_tv_bound(d.tv_space, tv_cur, tv_dly,
                                   std::max(cur_sup, dly_sup));
    d.overshoot = d.rho_max_val > model.rho_max;
    traj.diagnostics.push_back(d);

    cur = next;
    hist.push(std::move(next));

    if (n % snapshot_every == 0) {
      traj.snapshots.emplace_back(t, cur);
      last_snapshot_step = n;
    }
    if (d.overshoot && cfg.feasibility == Feasibility::Abort) {
      traj.termination = {TerminationKind::FeasibilityAbort, n};
      break;
    }
  }

  if (last_snapshot_step != n) traj.snapshots.emplace_back(t, cur);
  return traj;
}

// First step whose state exceeded rho_max, if any (step 0 = initial datum).
inline std::optional<long> first_overshoot_step(const Trajectory& traj) {
  for (const auto& d : traj.diagnostics)
    if (d.overshoot) return d.step;
  return std::nullopt;
}

}  // namespace dlwr
