#pragma once

#include <string>

#include "dlwr/errors.hpp"

namespace dlwr {

// Uniform cell-centered grid on [a, b]: x_i = a + (i + 1/2) dx.
struct GridSpec {
  double a = 0.0;
  double b = 1.0;
  int nx = 0;
  double dx = 0.0;

  double cell_center(int i) const { return a + (i + 0.5) * dx; }
};

inline GridSpec grid_new(double a, double b, int nx) {
  if (!(b > a))
    throw ConfigError("grid: right endpoint must exceed left endpoint (a=" +
                      std::to_string(a) + ", b=" + std::to_string(b) + ")");
  if (nx < 3)
    throw ConfigError("grid: need at least 3 cells, got " + std::to_string(nx));
  GridSpec g;
  g.a = a;
  g.b = b;
  g.nx = nx;
  g.dx = (b - a) / nx;
  return g;
}

}  // namespace dlwr
