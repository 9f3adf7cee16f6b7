#include "doctest.h"

#include <cmath>

#include "core/momentum.hpp"

using namespace gastar;

TEST_CASE("angular momentum functions and their rotor action") {
  AngularMomentumReport rep = angular_momentum_report();
  REQUIRE(rep.momenta.size() == 3);
  // P_3 = q1 p2 - q2 p1
  PhaseSpace ps = PhaseSpace::darboux(3);
  PolyScalar expect = ps.var("q1") * ps.var("p2") - ps.var("q2") * ps.var("p1");
  CHECK(rep.momenta[2].str() == expect.str());
  CHECK(rep.algebra_ok);
  CHECK(rep.field_match_ok);
  CHECK(rep.display_match_ok);
  CHECK(rep.equivariance_ok);
}

TEST_CASE("circle action around the vertical axis") {
  CircleActionReport rep = circle_action_report(20, 20);
  CHECK(rep.pde_residual < 1e-9);
  CHECK(rep.field_residual < 1e-12);
  CHECK(rep.equator_check < 1e-12);
  CHECK(rep.pole_value == doctest::Approx(1.0));
  // a grid reaching into the pole guard is rejected
  CHECK_THROWS_AS(circle_action_report(5, 5, 0.0, 0.049), math_error);
}
