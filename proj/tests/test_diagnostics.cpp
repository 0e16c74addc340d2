#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "dlwr/diagnostics.hpp"
#include "dlwr/experiments.hpp"
#include "dlwr/solver.hpp"

using namespace dlwr;
using Catch::Matchers::WithinAbs;

TEST_CASE("mass is dx times the cell sum") {
  const GridSpec g4 = grid_new(0, 1, 4);  // dx = 0.25
  CHECK(total_mass({0.5, 0.5, 0.5, 0.5}, g4) == 0.5);
  CHECK(total_mass({0.0, 0.0, 0.0, 0.0}, g4) == 0.0);

  const GridSpec g50 = grid_new(0, 1, 50);
  // mean of 5/8 + (1/8)sin over a full period; the sine samples cancel
  CHECK_THAT(total_mass(ic_sinusoidal(g50, 1), g50),
             WithinAbs(0.625, 1e-13));
}

TEST_CASE("spatial variation counts every interface") {
  CHECK_THAT(tv_space({0.2, 0.6, 0.2}, periodic_bc()),
             WithinAbs(0.8, 1e-15));
  CHECK(tv_space(DensityField(7, 0.3), periodic_bc()) == 0.0);
  // monotone ramp with matching ghost values telescopes to max - min
  CHECK_THAT(tv_space({0.0, 0.25, 0.5, 0.75, 1.0}, dirichlet_bc(0.0, 1.0)),
             WithinAbs(1.0, 1e-15));
  // the wrap interface is included under the periodic treatment
  CHECK_THAT(tv_space({0.0, 1.0}, periodic_bc()), WithinAbs(2.0, 1e-15));
}

TEST_CASE("zero spatial variation only for constants (wrap boundary)") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    DensityField f(12);
    for (auto& v : f) v = u(rng);
    const bool constant =
        std::all_of(f.begin(), f.end(), [&](double v) { return v == f[0]; });
    CHECK((tv_space(f, periodic_bc()) == 0.0) == constant);
  }
  CHECK(tv_space(DensityField(12, 0.77), periodic_bc()) == 0.0);
}

TEST_CASE("temporal increment is the elementwise l1 distance") {
  const DensityField a(10, 0.0);
  const DensityField b(10, 0.1);
  CHECK(tv_time_increment(a, a) == 0.0);
  CHECK_THAT(tv_time_increment(a, b), WithinAbs(1.0, 1e-15));

  const GridSpec g = grid_new(0, 1, 10);
  const DensityField c(10, 0.4);
  const DensityField next =
      lf_step(c, c, 0.01, g, greenshields(1, 1), periodic_bc());
  CHECK(tv_time_increment(c, next) == 0.0);
}

TEST_CASE("maximum-growth check allows the proven 3/2 factor") {
  CHECK(check_linf_bound(0.9, 0.8, 0.7));
  CHECK_FALSE(check_linf_bound(1.3, 0.8, 0.8));
  CHECK(check_linf_bound(1.2, 0.8, 0.8));  // exactly at the bound

  const Preset p = preset("test0");
  const Trajectory traj =
      run(p.solver, make_ic(p.ic, p.solver.grid), p.velocity);
  for (const auto& d : traj.diagnostics) CHECK(d.linf_ok);
}

TEST_CASE("variation-growth check uses the 2(5 + 1/m) factor") {
  CHECK(check_tv_bound(0, 0, 0, 0.5));
  CHECK(check_tv_bound(0.8, 0.8, 0.8, 1));  // bound is 9.6
  CHECK_FALSE(check_tv_bound(9.7, 0.8, 0.8, 1));
  // m = 0 makes the bound vacuous; growth from nothing is an anomaly
  CHECK_FALSE(check_tv_bound(0.5, 0, 0, 0));
  CHECK(check_tv_bound(0, 0, 0, 0));

  const Preset p = preset("test2");
  const Trajectory traj =
      run(p.solver, make_ic(p.ic, p.solver.grid), p.velocity);
  for (const auto& d : traj.diagnostics) CHECK(d.tv_space_ok);
}

TEST_CASE("amplitude is the max-min spread") {
  const GridSpec g = grid_new(0, 1, 50);
  // the grid samples the sine at its extrema (centers 0.25 and 0.75)
  CHECK_THAT(amplitude(ic_sinusoidal(g, 1)), WithinAbs(0.25, 1e-15));
  CHECK(amplitude(DensityField(9, 0.3)) == 0.0);
  CHECK_THAT(amplitude({0.1, 0.6}), WithinAbs(0.5, 1e-15));
}

TEST_CASE("wave counting on the periodic circle") {
  const GridSpec g = grid_new(0, 1, 50);
  CHECK(count_waves(ic_sinusoidal(g, 1), 0.05) == 1);
  CHECK(count_waves(ic_sinusoidal(g, 2), 0.05) == 2);
  CHECK(count_waves(DensityField(50, 0.6), 0.05) == 0);

  SECTION("plateaus count once") {
    CHECK(count_waves({0.2, 0.7, 0.7, 0.2, 0.2}, 0.05) == 1);
    CHECK(count_waves({0.2, 0.7, 0.7, 0.2, 0.7, 0.2}, 0.05) == 2);
  }
  SECTION("shallow bumps fall under the prominence threshold") {
    CHECK(count_waves({0.2, 0.23, 0.2, 0.2, 0.2}, 0.05) == 0);
    CHECK(count_waves({0.2, 0.23, 0.2, 0.2, 0.2}, 0.01) == 1);
  }
}

TEST_CASE("wave count is rotation- and offset-invariant") {
  const GridSpec g = grid_new(0, 1, 50);
  const DensityField base = ic_sinusoidal(g, 2);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t shift = rng() % base.size();
    DensityField rotated(base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
      rotated[i] = base[(i + shift) % base.size()];
    CHECK(count_waves(rotated, 0.05) == 2);

    DensityField offset = base;
    for (auto& v : offset) v += 0.1 * static_cast<double>(trial);
    CHECK(count_waves(offset, 0.05) == 2);
  }
}

TEST_CASE("worst-case guaranteed horizon (geometric series limit)") {
  CHECK(guaranteed_horizon_geometric(0.02, 0.75) == 0.08);
  CHECK(guaranteed_horizon_geometric(0.02, 1.0) == 0.06);
  CHECK(guaranteed_horizon_geometric(0.01, 0.5) == 0.06);
  CHECK(std::isinf(guaranteed_horizon_geometric(0.02, 0.0)));
}

TEST_CASE("delay-aware horizon partial sums") {
  // zero delay degenerates every summand to dx / rho0_max
  CHECK_THAT(horizon_partial_sum_delay(0.02, 1.0, 0.0, 0.0, 3),
             WithinAbs(0.06, 1e-15));
  CHECK_THAT(horizon_partial_sum_delay(0.02, 1.0, 1.0, 0.1, 1),
             WithinAbs(0.02 / 1.05, 1e-17));

  double prev = 0.0;
  for (int n = 1; n <= 40; ++n) {
    const double s = horizon_partial_sum_delay(0.02, 0.75, 1.0, 0.15, n);
    CHECK(s > prev);
    prev = s;
  }
}
