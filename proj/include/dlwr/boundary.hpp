#pragma once

#include <cstddef>
#include <utility>

#include "dlwr/field.hpp"

namespace dlwr {

struct BoundaryCondition {
  enum class Kind { Periodic, Dirichlet };
  Kind kind = Kind::Periodic;
  // Fixed ghost-cell values (Dirichlet only), constant in time; they enter
  // both the averaging and the flux term of the stencil, and the delayed
  // ghost value equals the same constant.
  double left = 0.0;
  double right = 0.0;
};

inline BoundaryCondition periodic_bc() { return BoundaryCondition{}; }

inline BoundaryCondition dirichlet_bc(double left, double right) {
  BoundaryCondition bc;
  bc.kind = BoundaryCondition::Kind::Dirichlet;
  bc.left = left;
  bc.right = right;
  return bc;
}

// Neighbor values (rho_left, rho_right) of cell i under the boundary rule.
inline std::pair<double, double> neighbors(const DensityField& f, int i,
                                           const BoundaryCondition& bc) {
  const int nx = static_cast<int>(f.size());
  if (bc.kind == BoundaryCondition::Kind::Periodic)
    return {f[static_cast<std::size_t>((i + nx - 1) % nx)],
            f[static_cast<std::size_t>((i + 1) % nx)]};
  const double l = i == 0 ? bc.left : f[static_cast<std::size_t>(i - 1)];
  const double r = i == nx - 1 ? bc.right : f[static_cast<std::size_t>(i + 1)];
  return {l, r};
}

}  // namespace dlwr
