#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dlwr/errors.hpp"
#include "dlwr/field.hpp"
#include "dlwr/grid.hpp"
#include "dlwr/history.hpp"

using namespace dlwr;

TEST_CASE("grid construction and spacing") {
  CHECK(grid_new(0, 1, 50).dx == 0.02);
  CHECK(grid_new(0, 1, 1000).dx == 0.001);
  CHECK(grid_new(0, 2, 100).dx == 0.02);

  const GridSpec g = grid_new(0, 1, 50);
  CHECK(g.a == 0.0);
  CHECK(g.b == 1.0);
  CHECK(g.nx == 50);
  CHECK(g.cell_center(0) == 0.01);
  CHECK_THAT(g.cell_center(49), Catch::Matchers::WithinAbs(0.99, 1e-15));
}

TEST_CASE("grid rejects degenerate input") {
  CHECK_THROWS_AS(grid_new(0, 1, 2), ConfigError);
  CHECK_THROWS_AS(grid_new(0, 1, 0), ConfigError);
  CHECK_THROWS_AS(grid_new(1, 1, 50), ConfigError);
  CHECK_THROWS_AS(grid_new(2, 1, 50), ConfigError);
}

TEST_CASE("field reductions") {
  const DensityField f{0.2, -0.4, 0.3};
  CHECK(field_max(f) == 0.3);
  CHECK(field_min(f) == -0.4);
  CHECK(field_sup_abs(f) == 0.4);
  CHECK(field_finite(f));
  DensityField bad{0.1, std::numeric_limits<double>::quiet_NaN()};
  CHECK_FALSE(field_finite(bad));
}

namespace {
DensityField constant_field(std::size_t n, double v) {
  return DensityField(n, v);
}
}  // namespace

TEST_CASE("history serves the constant pre-initial field") {
  const DensityField rho0 = constant_field(5, 0.3);

  SECTION("query far below zero returns the initial datum") {
    HistoryBuffer buf = history_init(rho0, 15);
    CHECK(buf.at_step(-12) == rho0);
  }
  SECTION("zero delay still answers at the head") {
    HistoryBuffer buf = history_init(rho0, 0);
    CHECK(buf.at_step(0) == rho0);
    CHECK(history_delayed(buf, 0, 0) == rho0);
  }
  SECTION("step 0 remains reachable through a full window of pushes") {
    HistoryBuffer buf = history_init(rho0, 10);
    for (int s = 1; s <= 10; ++s)
      buf.push(constant_field(5, 0.3 + 0.01 * s));
    CHECK(buf.at_step(0) == rho0);
  }
}

TEST_CASE("history delayed lookup is exact index arithmetic") {
  const DensityField rho0 = constant_field(4, 0.5);
  HistoryBuffer buf = history_init(rho0, 15);
  for (int s = 1; s <= 20; ++s) buf.push(constant_field(4, 0.01 * s));
  // head = 20, delay 15 -> the field pushed at step 5
  CHECK(history_delayed(buf, 20, 15) == constant_field(4, 0.05));

  HistoryBuffer early = history_init(rho0, 15);
  for (int s = 1; s <= 3; ++s) early.push(constant_field(4, 0.01 * s));
  CHECK(history_delayed(early, 3, 15) == rho0);  // 3 - 15 clamps below 0

  HistoryBuffer edge = history_init(rho0, 15);
  for (int s = 1; s <= 15; ++s) edge.push(constant_field(4, 0.01 * s));
  CHECK(history_delayed(edge, 15, 15) == rho0);  // boundary of the clamp
}

TEST_CASE("history round-trips every pushed field") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int delay = 6;
  const std::size_t nx = 9;

  DensityField rho0(nx);
  for (auto& v : rho0) v = u(rng);
  HistoryBuffer buf = history_init(rho0, delay);

  std::vector<DensityField> pushed{rho0};
  for (int s = 1; s <= 40; ++s) {
    DensityField f(nx);
    for (auto& v : f) v = u(rng);
    pushed.push_back(f);
    buf.push(f);
    const long expect = std::max<long>(0, s - delay);
    CHECK(buf.delayed() == pushed[static_cast<std::size_t>(expect)]);
    CHECK(buf.latest() == pushed.back());
  }
}

TEST_CASE("history rejects queries outside the retained window") {
  HistoryBuffer buf = history_init(constant_field(3, 0.1), 4);
  for (int s = 1; s <= 10; ++s) buf.push(constant_field(3, 0.1));
  CHECK_THROWS_AS(buf.at_step(5), std::logic_error);   // older than head-4
  CHECK_THROWS_AS(buf.at_step(11), std::logic_error);  // future
  CHECK_NOTHROW(buf.at_step(6));
  CHECK_NOTHROW(buf.at_step(10));
  CHECK_THROWS_AS(history_delayed(buf, 9, 4), std::logic_error);  // stale head
  CHECK_THROWS_AS(history_delayed(buf, 10, 3), std::logic_error);  // wrong T
}

TEST_CASE("history storage stays at delay+1 fields regardless of run length") {
  HistoryBuffer buf = history_init(constant_field(8, 0.2), 12);
  CHECK(buf.capacity() == 13);
  for (int s = 1; s <= 5000; ++s) buf.push(constant_field(8, 0.2));
  CHECK(buf.capacity() == 13);
}
