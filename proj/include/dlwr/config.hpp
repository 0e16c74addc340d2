#pragma once

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dlwr/errors.hpp"
#include "dlwr/experiments.hpp"
#include "dlwr/solver.hpp"

namespace dlwr {

// A complete run description: discretization, velocity closure, initial
// datum. This is the unit the CLI reads, echoes into manifests, and
// round-trips through serialize_config / parse_config_text.
struct FullConfig {
  SolverConfig solver;
  VelocityModel velocity;
  IcSpec ic;
};

namespace cfgdetail {

using json = nlohmann::json;

inline void reject_unknown_keys(const json& obj, const std::string& where,
                                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
  }
}

inline const json& require(const json& obj, const std::string& where,
                           const char* key) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw ConfigError("config: missing key '" + std::string(key) + "' in " +
                      where);
  return *it;
}

inline double num(const json& v, const std::string& what) {
  if (!v.is_number())
    throw ConfigError("config: '" + what + "' must be a number");
  return v.get<double>();
}

inline int integer(const json& v, const std::string& what) {
  if (!v.is_number_integer())
    throw ConfigError("config: '" + what + "' must be an integer");
  return v.get<int>();
}

inline std::string str(const json& v, const std::string& what) {
  if (!v.is_string())
    throw ConfigError("config: '" + what + "' must be a string");
  return v.get<std::string>();
}

inline GridSpec parse_grid(const json& j) {
  if (!j.is_object()) throw ConfigError("config: 'grid' must be an object");
  reject_unknown_keys(j, "grid", {"a", "b", "nx"});
  return grid_new(num(require(j, "grid", "a"), "grid.a"),
                  num(require(j, "grid", "b"), "grid.b"),
                  integer(require(j, "grid", "nx"), "grid.nx"));
}

inline BoundaryCondition parse_bc(const json& j) {
  if (!j.is_object()) throw ConfigError("config: 'bc' must be an object");
  const std::string kind = str(require(j, "bc", "kind"), "bc.kind");
  if (kind == "periodic") {
    reject_unknown_keys(j, "bc", {"kind"});
    return periodic_bc();
  }
  if (kind == "dirichlet") {
    reject_unknown_keys(j, "bc", {"kind", "left", "right"});
    return dirichlet_bc(num(require(j, "bc", "left"), "bc.left"),
                        num(require(j, "bc", "right"), "bc.right"));
  }
  throw ConfigError("config: bc.kind must be 'periodic' or 'dirichlet', got '" +
                    kind + "'");
}

inline void parse_dt(const json& j, SolverConfig& cfg) {
  if (!j.is_object()) throw ConfigError("config: 'dt' must be an object");
  const std::string kind = str(require(j, "dt", "kind"), "dt.kind");
  if (kind == "fixed") {
    reject_unknown_keys(j, "dt", {"kind", "value"});
    cfg.dt_policy = FixedDt{num(require(j, "dt", "value"), "dt.value")};
  } else if (kind == "adaptive") {
    reject_unknown_keys(j, "dt", {"kind", "safety"});
    cfg.dt_policy =
        AdaptiveDt{num(require(j, "dt", "safety"), "dt.safety")};
  } else {
    throw ConfigError("config: dt.kind must be 'fixed' or 'adaptive', got '" +
                      kind + "'");
  }
}

inline void parse_stop(const json& j, SolverConfig& cfg) {
  if (!j.is_object()) throw ConfigError("config: 'stop' must be an object");
  reject_unknown_keys(j, "stop", {"kind", "value"});
  const std::string kind = str(require(j, "stop", "kind"), "stop.kind");
  if (kind == "steps")
    cfg.stop = StopSteps{integer(require(j, "stop", "value"), "stop.value")};
  else if (kind == "time")
    cfg.stop = StopTime{num(require(j, "stop", "value"), "stop.value")};
  else
    throw ConfigError("config: stop.kind must be 'steps' or 'time', got '" +
                      kind + "'");
}

inline VelocityModel parse_velocity(const json& j) {
  if (!j.is_object())
    throw ConfigError("config: 'velocity' must be an object");
  const std::string kind = str(require(j, "velocity", "kind"), "velocity.kind");
  const double rho_max =
      j.contains("rho_max") ? num(j["rho_max"], "velocity.rho_max") : 1.0;
  if (kind == "greenshields") {
    reject_unknown_keys(j, "velocity", {"kind", "v_max", "rho_max"});
    return greenshields(num(require(j, "velocity", "v_max"), "velocity.v_max"),
                        rho_max);
  }
  if (kind == "cut") {
    reject_unknown_keys(j, "velocity",
                        {"kind", "v_max", "rho_max", "rho_f", "rho_c", "alpha"});
    const double v_max = num(require(j, "velocity", "v_max"), "velocity.v_max");
    const double rho_f = num(require(j, "velocity", "rho_f"), "velocity.rho_f");
    const double rho_c = num(require(j, "velocity", "rho_c"), "velocity.rho_c");
    const json& alpha = require(j, "velocity", "alpha");
    if (alpha.is_string()) {
      if (alpha.get<std::string>() != "auto")
        throw ConfigError(
            "config: velocity.alpha must be a positive number or \"auto\"");
      return cut_piecewise(v_max, rho_f, rho_c, -1.0, rho_max);
    }
    return cut_piecewise(v_max, rho_f, rho_c, num(alpha, "velocity.alpha"),
                         rho_max);
  }
  throw ConfigError("config: velocity.kind must be 'greenshields' or 'cut', got '" +
                    kind + "'");
}

inline IcSpec parse_ic(const json& j) {
  if (!j.is_object()) throw ConfigError("config: 'ic' must be an object");
  IcSpec ic;
  const std::string kind = str(require(j, "ic", "kind"), "ic.kind");
  if (kind == "sinusoidal") {
    reject_unknown_keys(j, "ic", {"kind", "k"});
    ic.kind = IcSpec::Kind::Sinusoidal;
    ic.k = integer(require(j, "ic", "k"), "ic.k");
  } else if (kind == "riemann") {
    reject_unknown_keys(j, "ic", {"kind", "left", "right", "x_jump"});
    ic.kind = IcSpec::Kind::Riemann;
    ic.left = num(require(j, "ic", "left"), "ic.left");
    ic.right = num(require(j, "ic", "right"), "ic.right");
    ic.x_jump = num(require(j, "ic", "x_jump"), "ic.x_jump");
  } else if (kind == "cell_perturbation") {
    reject_unknown_keys(j, "ic", {"kind", "ambient", "bump", "lo", "hi"});
    ic.kind = IcSpec::Kind::CellPerturbation;
    ic.ambient = num(require(j, "ic", "ambient"), "ic.ambient");
    ic.bump = num(require(j, "ic", "bump"), "ic.bump");
    ic.lo = num(require(j, "ic", "lo"), "ic.lo");
    ic.hi = num(require(j, "ic", "hi"), "ic.hi");
  } else if (kind == "constant") {
    reject_unknown_keys(j, "ic", {"kind", "value"});
    ic.kind = IcSpec::Kind::Constant;
    ic.value = num(require(j, "ic", "value"), "ic.value");
  } else {
    throw ConfigError("config: ic.kind must be one of sinusoidal, riemann, "
                      "cell_perturbation, constant; got '" + kind + "'");
  }
  return ic;
}

}  // namespace cfgdetail

// Parse and fully validate a configuration document. Unknown keys are
// rejected, defaults (velocity.rho_max, feasibility) are expanded, and the
// cross-field invariants are checked, including the fixed-dt CFL bound
// against the initial datum this config describes.
inline FullConfig parse_config_text(const std::string& text) {
  using cfgdetail::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: document must be an object");
  cfgdetail::reject_unknown_keys(
      j, "config",
      {"grid", "bc", "delay_steps", "dt", "stop", "feasibility", "velocity",
       "ic"});

  FullConfig c;
  c.solver.grid = cfgdetail::parse_grid(cfgdetail::require(j, "config", "grid"));
  c.solver.bc = cfgdetail::parse_bc(cfgdetail::require(j, "config", "bc"));
  c.solver.t_delay_steps = cfgdetail::integer(
      cfgdetail::require(j, "config", "delay_steps"), "delay_steps");
  cfgdetail::parse_dt(cfgdetail::require(j, "config", "dt"), c.solver);
  cfgdetail::parse_stop(cfgdetail::require(j, "config", "stop"), c.solver);
  if (j.contains("feasibility")) {
    const std::string f = cfgdetail::str(j["feasibility"], "feasibility");
    if (f == "warn")
      c.solver.feasibility = Feasibility::WarnOnly;
    else if (f == "abort")
      c.solver.feasibility = Feasibility::Abort;
    else
      throw ConfigError("config: feasibility must be 'warn' or 'abort', got '" +
                        f + "'");
  }
  c.velocity =
      cfgdetail::parse_velocity(cfgdetail::require(j, "config", "velocity"));
  c.ic = cfgdetail::parse_ic(cfgdetail::require(j, "config", "ic"));

  if (c.velocity.v_max > c.velocity.rho_max)
    throw ConfigError(
        "config: v_max must not exceed rho_max (the discrete estimates "
        "assume normalized speeds)");
  validate_solver_config(c.solver, c.velocity);
  validate_fixed_dt(c.solver, make_ic(c.ic, c.solver.grid));
  return c;
}

inline FullConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

// JSON document for a configuration. With resolve_defaults the echo carries
// every default expanded and the continuity-forcing alpha as its numeric
// value; without, the document round-trips exactly what was given.
inline nlohmann::json config_to_json(const FullConfig& c,
                                     bool resolve_defaults = false) {
  using cfgdetail::json;
  json j;
  j["grid"] = {{"a", c.solver.grid.a}, {"b", c.solver.grid.b},
               {"nx", c.solver.grid.nx}};
  if (c.solver.bc.kind == BoundaryCondition::Kind::Periodic)
    j["bc"] = {{"kind", "periodic"}};
  else
    j["bc"] = {{"kind", "dirichlet"}, {"left", c.solver.bc.left},
               {"right", c.solver.bc.right}};
  j["delay_steps"] = c.solver.t_delay_steps;
  if (const auto* f = std::get_if<FixedDt>(&c.solver.dt_policy))
    j["dt"] = {{"kind", "fixed"}, {"value", f->dt}};
  else
    j["dt"] = {{"kind", "adaptive"},
               {"safety", std::get<AdaptiveDt>(c.solver.dt_policy).safety}};
  if (const auto* s = std::get_if<StopSteps>(&c.solver.stop))
    j["stop"] = {{"kind", "steps"}, {"value", s->n}};
  else
    j["stop"] = {{"kind", "time"},
                 {"value", std::get<StopTime>(c.solver.stop).t_f}};
  j["feasibility"] =
      c.solver.feasibility == Feasibility::WarnOnly ? "warn" : "abort";

  json v;
  if (c.velocity.kind == VelocityKind::Greenshields) {
    v = {{"kind", "greenshields"}, {"v_max", c.velocity.v_max},
         {"rho_max", c.velocity.rho_max}};
  } else {
    v = {{"kind", "cut"},       {"v_max", c.velocity.v_max},
         {"rho_max", c.velocity.rho_max}, {"rho_f", c.velocity.rho_f},
         {"rho_c", c.velocity.rho_c}};
    if (c.velocity.alpha_is_auto && !resolve_defaults)
      v["alpha"] = "auto";
    else
      v["alpha"] = c.velocity.alpha;
  }
  j["velocity"] = v;

  json ic;
  switch (c.ic.kind) {
    case IcSpec::Kind::Sinusoidal:
      ic = {{"kind", "sinusoidal"}, {"k", c.ic.k}};
      break;
    case IcSpec::Kind::Riemann:
      ic = {{"kind", "riemann"}, {"left", c.ic.left}, {"right", c.ic.right},
            {"x_jump", c.ic.x_jump}};
      break;
    case IcSpec::Kind::CellPerturbation:
      ic = {{"kind", "cell_perturbation"}, {"ambient", c.ic.ambient},
            {"bump", c.ic.bump}, {"lo", c.ic.lo}, {"hi", c.ic.hi}};
      break;
    case IcSpec::Kind::Constant:
      ic = {{"kind", "constant"}, {"value", c.ic.value}};
      break;
  }
  j["ic"] = ic;
  return j;
}

inline std::string serialize_config(const FullConfig& c) {
  return config_to_json(c).dump(2) + "\n";
}

inline FullConfig preset_config(const Preset& p) {
  return FullConfig{p.solver, p.velocity, p.ic};
}

}  // namespace dlwr
