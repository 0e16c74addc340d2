#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dlwr/boundary.hpp"
#include "dlwr/field.hpp"
#include "dlwr/grid.hpp"

namespace dlwr {

// Per-step record written to the diagnostics CSV. `dt` is the step size that
// produced this state (0 for the initial row). The bound flags compare the
// state against the two fields that entered the step.
struct StepDiagnostics {
  long step = 0;
  double time = 0.0;
  double dt = 0.0;
  double mass = 0.0;
  double rho_min = 0.0;
  double rho_max_val = 0.0;
  double tv_space = 0.0;
  double tv_time_increment = 0.0;
  bool linf_ok = true;
  bool tv_space_ok = true;
  bool overshoot = false;
};

inline double total_mass(const DensityField& f, const GridSpec& g) {
  return g.dx * std::accumulate(f.begin(), f.end(), 0.0);
}

// Sum of |jump| over all cell interfaces: the wrap interface for periodic
// boundaries, both ghost interfaces for Dirichlet.
inline double tv_space(const DensityField& f, const BoundaryCondition& bc) {
  if (f.empty()) return 0.0;
  const std::size_t n = f.size();
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) tv += std::abs(f[i + 1] - f[i]);
  if (bc.kind == BoundaryCondition::Kind::Periodic) {
    tv += std::abs(f[0] - f[n - 1]);
  } else {
    tv += std::abs(f[0] - bc.left);
    tv += std::abs(bc.right - f[n - 1]);
  }
  return tv;
}

inline double tv_time_increment(const DensityField& prev,
                                const DensityField& next) {
  if (prev.size() != next.size())
    throw std::logic_error("tv_time_increment: field length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < prev.size(); ++i)
    s += std::abs(next[i] - prev[i]);
  return s;
}

// Discrete sup-norm growth bound: one step may grow the sup-norm by at most
// a factor 3/2 over the worse of the current and delayed states.
inline bool check_linf_bound(double next_max, double cur_max,
                             double delayed_max) {
  return next_max <= 1.5 * std::max(cur_max, delayed_max) + 1e-12;
}

// TV growth bound with the density-dependent factor 2(5 + 1/m), where m is
// the sup-norm over the current and delayed fields. A vacuum state (m = 0)
// makes the factor infinite; only the trivial zero-TV case passes then.
inline bool check_tv_bound(double tv_next, double tv_cur, double tv_delayed,
                           double m) {
  if (!(m > 0.0)) return tv_next <= 1e-12;
  return tv_next <= 2.0 * (5.0 + 1.0 / m) * std::max(tv_cur, tv_delayed) +
                        1e-12;
}

inline double amplitude(const DensityField& f) {
  if (f.empty()) return 0.0;
  const auto [mn, mx] = std::minmax_element(f.begin(), f.end());
  return *mx - *mn;
}

// Number of waves: strict local maxima of the field viewed on the circle,
// after collapsing plateaus, keeping only peaks whose prominence (height
// above the higher of the two neighboring valleys) reaches min_prominence.
inline int count_waves(const DensityField& f, double min_prominence) {
  const std::size_t n = f.size();
  if (n == 0) return 0;
  if (std::all_of(f.begin(), f.end(), [&](double v) { return v == f[0]; }))
    return 0;

  // Collapse runs of equal values to single representatives.
  std::vector<double> vals;
  std::size_t j = 0;
  while (j < n) {
    std::size_t k = j;
    while (k + 1 < n && f[k + 1] == f[j]) ++k;
    vals.push_back(f[j]);
    j = k + 1;
  }
  // A run wrapping around the seam is one plateau, not two.
  if (vals.size() > 1 && vals.front() == vals.back()) vals.pop_back();
  const std::size_t m = vals.size();
  if (m < 2) return 0;

  std::vector<std::size_t> peaks;  // indices into the run sequence
  for (std::size_t r = 0; r < m; ++r) {
    const double prev = vals[(r + m - 1) % m];
    const double next = vals[(r + 1) % m];
    if (vals[r] > prev && vals[r] > next) peaks.push_back(r);
  }
  if (peaks.empty()) return 0;
  if (peaks.size() == 1) {
    const double vmin = *std::min_element(vals.begin(), vals.end());
    return vals[peaks[0]] - vmin >= min_prominence ? 1 : 0;
  }

  // Valley depth between each pair of circularly consecutive peaks.
  const std::size_t np = peaks.size();
  std::vector<double> valley_after(np,
                                   std::numeric_limits<double>::infinity());
  for (std::size_t p = 0; p < np; ++p) {
    const std::size_t r0 = peaks[p];
    const std::size_t r1 = peaks[(p + 1) % np];
    double vmin = std::numeric_limits<double>::infinity();
    for (std::size_t r = (r0 + 1) % m; r != r1; r = (r + 1) % m)
      vmin = std::min(vmin, vals[r]);
    valley_after[p] = vmin;
  }
  int cnt = 0;
  for (std::size_t p = 0; p < np; ++p) {
    const double right = valley_after[p];
    const double left = valley_after[(p + np - 1) % np];
    if (vals[peaks[p]] - std::max(left, right) >= min_prominence) ++cnt;
  }
  return cnt;
}

// Horizon reachable under the worst-case sup-norm growth per step: the step
// sizes form a geometric series summing to 3 dx / sup|rho0|.
inline double guaranteed_horizon_geometric(double dx, double rho0_sup) {
  if (!(rho0_sup > 0.0)) return std::numeric_limits<double>::infinity();
  return 3.0 * dx / rho0_sup;
}

// Partial sum of the delay-aware horizon estimate:
//   t_n = dx * sum_{i=1..n} 1 / (rho0_max + i * (1/2) * dt_rho_sup * T).
// Harmonic-type: unbounded in n whenever the increment factor is nonzero.
inline double horizon_partial_sum_delay(double dx, double rho0_max,
                                        double dt_rho_sup, double T, long n) {
  const double inc = 0.5 * dt_rho_sup * T;
  double s = 0.0;
  for (long i = 1; i <= n; ++i)
    s += dx / (rho0_max + static_cast<double>(i) * inc);
  return s;
}

}  // namespace dlwr
