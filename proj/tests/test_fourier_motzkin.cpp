#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shamoduli/fourier_motzkin.hpp"

using namespace shamoduli;

TEST_CASE("strict inequalities decide touching intervals") {
  LinearSystem closed(1);
  closed.add_le({1}, 1);
  closed.add_ge({1}, 1);
  auto r = fourier_motzkin(closed);
  REQUIRE(r.feasible);
  CHECK(r.witness == RationalVector{1});

  LinearSystem open(1);
  open.add_lt({1}, 1);
  open.add_ge({1}, 1);
  auto s = fourier_motzkin(open);
  CHECK_FALSE(s.feasible);
  CHECK(verify_farkas(open, s.farkas));
}

TEST_CASE("small 2d systems") {
  // x + y > 2, x <= 1, y <= 1: infeasible.
  LinearSystem sys(2);
  sys.add_gt({1, 1}, 2);
  sys.add_le({1, 0}, 1);
  sys.add_le({0, 1}, 1);
  auto r = fourier_motzkin(sys);
  CHECK_FALSE(r.feasible);
  CHECK(verify_farkas(sys, r.farkas));

  // x + y >= 2 instead: the corner (1, 1).
  LinearSystem sys2(2);
  sys2.add_ge({1, 1}, 2);
  sys2.add_le({1, 0}, 1);
  sys2.add_le({0, 1}, 1);
  auto r2 = fourier_motzkin(sys2);
  REQUIRE(r2.feasible);
  CHECK(sys2.satisfied_by(r2.witness));
}

TEST_CASE("random systems: verdict matches a grid oracle on bounded boxes") {
  // Every system includes 0 <= x_i <= 2 with integer data, so feasibility of
  // the non-strict system is witnessed on the grid {0, 1/2, ..., 2}^2 whenever
  // a vertex exists; we only compare in the direction the grid can certify.
  RationalStream rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    LinearSystem sys(2);
    for (int i = 0; i < 2; ++i) {
      RationalVector e(2);
      e[static_cast<std::size_t>(i)] = 1;
      sys.add_ge(e, 0);
      sys.add_le(e, 2);
    }
    for (int k = 0; k < 3; ++k) sys.add_le({rng.next_int(-3, 3), rng.next_int(-3, 3)}, rng.next_int(-3, 3));
    auto r = fourier_motzkin(sys);
    bool grid = false;
    for (int a = 0; a <= 24 && !grid; ++a)
      for (int b = 0; b <= 24 && !grid; ++b) grid = sys.satisfied_by({Rational(a, 12), Rational(b, 12)});
    if (grid) CHECK(r.feasible);
    if (r.feasible)
      CHECK(sys.satisfied_by(r.witness));
    else
      CHECK(verify_farkas(sys, r.farkas));
  }
}

TEST_CASE("verify_farkas rejects bad multipliers") {
  LinearSystem sys(1);
  sys.add_le({1}, 0);
  sys.add_ge({1}, 1);
  CHECK(verify_farkas(sys, {1, 1}));
  CHECK_FALSE(verify_farkas(sys, {1, 2}));
  CHECK_FALSE(verify_farkas(sys, {-1, -1}));
  CHECK_FALSE(verify_farkas(sys, {1}));
}
