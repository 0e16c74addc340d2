#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace dlwr {

// One spatial snapshot of cell-averaged densities.
using DensityField = std::vector<double>;

inline double field_max(const DensityField& f) {
  return f.empty() ? 0.0 : *std::max_element(f.begin(), f.end());
}

inline double field_min(const DensityField& f) {
  return f.empty() ? 0.0 : *std::min_element(f.begin(), f.end());
}

// Grid sup-norm, sup_i |f_i|.
inline double field_sup_abs(const DensityField& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

inline bool field_finite(const DensityField& f) {
  for (double v : f)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace dlwr
