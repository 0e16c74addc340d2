#pragma once

#include <stdexcept>
#include <string>

#include "dlwr/errors.hpp"

namespace dlwr {

enum class VelocityKind { Greenshields, CutPiecewise };

// Velocity closure V(rho). Greenshields is the linear law cut at zero;
// CutPiecewise is free flow below rho_f, the hyperbolic branch
// alpha (1/rho - 1/rho_c) between rho_f and rho_c, and a full stop at and
// above rho_c. rho_max is the normalization density used by the feasibility
// monitor (and the Greenshields slope).
struct VelocityModel {
  VelocityKind kind = VelocityKind::Greenshields;
  double v_max = 1.0;
  double rho_max = 1.0;
  double rho_f = 0.0;
  double rho_c = 0.0;
  double alpha = 0.0;
  bool alpha_is_auto = false;
};

// The unique alpha making the cut law continuous at rho_f (continuity at
// rho_c holds identically, since the branch vanishes there).
inline double alpha_continuous(double v_max, double rho_f, double rho_c) {
  if (!(rho_f > 0.0))
    throw ConfigError(
        "velocity: no finite continuity-forcing alpha exists for rho_f = 0");
  if (!(rho_f < rho_c))
    throw ConfigError("velocity: need rho_f < rho_c for the cut law");
  return v_max / (1.0 / rho_f - 1.0 / rho_c);
}

inline VelocityModel greenshields(double v_max, double rho_max) {
  if (!(v_max > 0.0) || !(rho_max > 0.0))
    throw ConfigError("velocity: v_max and rho_max must be positive");
  VelocityModel m;
  m.kind = VelocityKind::Greenshields;
  m.v_max = v_max;
  m.rho_max = rho_max;
  return m;
}

// alpha < 0 requests the auto-continuous coefficient.
inline VelocityModel cut_piecewise(double v_max, double rho_f, double rho_c,
                                   double alpha = -1.0, double rho_max = 1.0) {
  if (!(v_max > 0.0) || !(rho_max > 0.0))
    throw ConfigError("velocity: v_max and rho_max must be positive");
  if (!(rho_f >= 0.0 && rho_f < rho_c && rho_c <= rho_max))
    throw ConfigError(
        "velocity: thresholds must satisfy 0 <= rho_f < rho_c <= rho_max");
  VelocityModel m;
  m.kind = VelocityKind::CutPiecewise;
  m.v_max = v_max;
  m.rho_max = rho_max;
  m.rho_f = rho_f;
  m.rho_c = rho_c;
  if (alpha < 0.0) {
    m.alpha = alpha_continuous(v_max, rho_f, rho_c);
    m.alpha_is_auto = true;
  } else {
    if (!(alpha > 0.0)) throw ConfigError("velocity: alpha must be positive");
    m.alpha = alpha;
    m.alpha_is_auto = false;
  }
  return m;
}

// V(rho). Densities above rho_max are legal inputs (the delayed model has no
// maximum principle); both variants return 0 there rather than going negative.
inline double velocity(const VelocityModel& m, double rho) {
  if (rho < 0.0)
    throw std::domain_error("velocity: negative density " +
                            std::to_string(rho));
  if (m.kind == VelocityKind::Greenshields) {
    const double v = m.v_max * (1.0 - rho / m.rho_max);
    return v > 0.0 ? v : 0.0;
  }
  if (rho <= m.rho_f) return m.v_max;
  if (rho >= m.rho_c) return 0.0;
  double v = m.alpha * (1.0 / rho - 1.0 / m.rho_c);
  // An explicit (non-continuous) alpha may overshoot the speed limit near
  // rho_f; clamp so 0 <= V <= v_max always holds.
  if (v > m.v_max) v = m.v_max;
  if (v < 0.0) v = 0.0;
  return v;
}

// Delayed flux f(rho_delayed, rho_current) = V(rho_delayed) * rho_current.
inline double flux(const VelocityModel& m, double rho_delayed,
                   double rho_current) {
  return velocity(m, rho_delayed) * rho_current;
}

}  // namespace dlwr
