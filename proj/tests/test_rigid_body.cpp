#include "doctest.h"

#include <cmath>

#include "core/reports.hpp"
#include "core/rigid_body.hpp"

using namespace gastar;

TEST_CASE("inertia operator invariants") {
  CHECK_THROWS_AS(InertiaOperator::principal(0.0, 1.0, 1.0), math_error);
  InertiaOperator op = InertiaOperator::principal(1.0, 2.0, 3.0);
  Rng rng(137);
  for (int it = 0; it < 20; ++it) {
    Vec3 a = {rng.real(-2, 2), rng.real(-2, 2), rng.real(-2, 2)};
    Vec3 b = {rng.real(-2, 2), rng.real(-2, 2), rng.real(-2, 2)};
    CHECK(op.symmetric_on(a, b));
    CHECK(op.positive_on(a));
  }
  // mass-sample assembly reproduces the principal moments of a symmetric cloud
  std::vector<std::pair<double, Vec3>> cloud = {{1.0, {1, 0, 0}}, {1.0, {-1, 0, 0}},
                                                {2.0, {0, 1, 0}}, {2.0, {0, -1, 0}},
                                                {3.0, {0, 0, 1}}, {3.0, {0, 0, -1}}};
  InertiaOperator im = InertiaOperator::from_point_masses(cloud);
  CHECK(im.matrix()[0][0] == doctest::Approx(10.0));
  CHECK(im.matrix()[1][1] == doctest::Approx(8.0));
  CHECK(im.matrix()[2][2] == doctest::Approx(6.0));
  CHECK(std::fabs(im.matrix()[0][1]) < 1e-14);
  for (int it = 0; it < 10; ++it) {
    Vec3 b = {rng.real(-1, 1), rng.real(-1, 1), rng.real(-1, 1)};
    Vec3 b2 = {rng.real(-1, 1), rng.real(-1, 1), rng.real(-1, 1)};
    CHECK(im.symmetric_on(b, b2));
    CHECK(im.positive_on(b));
  }
}

TEST_CASE("component Euler equations take the cyclic form") {
  InertiaOperator op = InertiaOperator::principal(1.0, 2.0, 3.0);
  Vec3 w = {1.0, 1.0, 1.0};
  Vec3 l = op.apply(w);
  Vec3 wdot = op.apply_inverse(euler_rhs(l, op));
  CHECK(wdot[0] == doctest::Approx((2.0 - 3.0) / 1.0));
  CHECK(wdot[1] == doctest::Approx((3.0 - 1.0) / 2.0));
  CHECK(wdot[2] == doctest::Approx((1.0 - 2.0) / 3.0));
}

TEST_CASE("both right-hand-side routes agree") {
  InertiaOperator op = InertiaOperator::principal(1.0, 2.0, 3.0);
  Rng rng(139);
  for (int it = 0; it < 25; ++it) {
    Vec3 l = {rng.real(-2, 2), rng.real(-2, 2), rng.real(-2, 2)};
    Vec3 a = euler_rhs(l, op);
    Vec3 b = euler_rhs_lie_poisson(l, op);
    for (int k = 0; k < 3; ++k) CHECK(std::fabs(a[static_cast<size_t>(k)] - b[static_cast<size_t>(k)]) < 1e-12);
  }
}

TEST_CASE("principal axis spin is an equilibrium") {
  InertiaOperator op = InertiaOperator::principal(1.0, 2.0, 3.0);
  RigidState s{0.0, {0.0, 0.0, 2.0}, {1, 0, 0, 0}};
  Trajectory traj = integrate_free_body(s, op, 1e-3, 2000);
  CHECK(traj.casimir_drift < 1e-12);
  CHECK(traj.energy_drift < 1e-12);
  CHECK(std::fabs(traj.back().lb[2] - 2.0) < 1e-12);
  CHECK(std::fabs(traj.back().lb[0]) < 1e-12);
  // fixed rotation plane: the rotor stays in span{1, B3}
  CHECK(std::fabs(traj.back().rotor[1]) < 1e-12);
  CHECK(std::fabs(traj.back().rotor[2]) < 1e-12);
  PoincareResidual res = poincare_residual(traj, op);
  CHECK(res.max < 1e-12);
}

TEST_CASE("generic trajectory conserves the invariants") {
  InertiaOperator op = InertiaOperator::principal(1.0, 2.0, 3.0);
  RigidState s{0.0, {0.8, 0.4, 1.2}, {1, 0, 0, 0}};
  Trajectory traj = integrate_free_body(s, op, 1e-3, 10000);
  CHECK(traj.casimir_drift < 1e-10);
  CHECK(traj.energy_drift < 1e-8);
  CHECK(traj.spatial_l_drift < 1e-6);
  PoincareResidual res = poincare_residual(traj, op);
  CHECK(res.max < 1e-6);
  // rotor stays unit and the derived rotation preserves lengths
  const Rotor3& r = traj.back().rotor;
  CHECK(rotor_norm(r) == doctest::Approx(1.0).epsilon(1e-12));
  Vec3 v = {0.3, -0.5, 0.9};
  Vec3 moved = rotor_sandwich(r, v);
  CHECK(moved[0] * moved[0] + moved[1] * moved[1] + moved[2] * moved[2] ==
        doctest::Approx(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).epsilon(1e-9));
}

TEST_CASE("forward then backward integration returns the start") {
  InertiaOperator op = InertiaOperator::principal(1.0, 2.0, 3.0);
  RigidState s{0.0, {0.8, 0.4, 1.2}, {1, 0, 0, 0}};
  Trajectory fwd = integrate_free_body(s, op, 1e-3, 10000);
  RigidState end{fwd.back().t, fwd.back().lb, fwd.back().rotor};
  Trajectory back = integrate_free_body(end, op, -1e-3, 10000);
  double err = 0.0;
  for (int k = 0; k < 3; ++k) err = std::max(err, std::fabs(back.back().lb[static_cast<size_t>(k)] - s.lb[static_cast<size_t>(k)]));
  for (int k = 0; k < 4; ++k) err = std::max(err, std::fabs(back.back().rotor[static_cast<size_t>(k)] - s.rotor[static_cast<size_t>(k)]));
  CHECK(err < 1e-8);
}

TEST_CASE("residual decays at fourth order in the step") {
  InertiaOperator op = InertiaOperator::principal(1.0, 2.0, 3.0);
  RigidState s{0.0, {0.8, 0.4, 1.2}, {1, 0, 0, 0}};
  Trajectory coarse = integrate_free_body(s, op, 1e-1, 100);
  Trajectory fine = integrate_free_body(s, op, 2.5e-2, 400);
  double rc = poincare_residual(coarse, op).max;
  double rf = poincare_residual(fine, op).max;
  double ratio = rc / rf;
  CHECK(ratio > 64.0);     // at least well beyond third order
  CHECK(ratio < 1024.0);   // and in the fourth-order band
}

TEST_CASE("blowup reports the failing step") {
  InertiaOperator op = InertiaOperator::principal(1.0, 2.0, 3.0);
  RigidState s{0.0, {10.0, 10.0, 10.0}, {1, 0, 0, 0}};
  CHECK_THROWS_AS(integrate_free_body(s, op, 1e6, 50), math_error);
  CHECK_THROWS_AS(integrate_free_body(s, op, 0.0, 10), math_error);
}

TEST_CASE("trajectory csv carries the fixed header") {
  InertiaOperator op = InertiaOperator::principal(1.0, 2.0, 3.0);
  RigidState s{0.0, {0.1, 0.2, 0.3}, {1, 0, 0, 0}};
  Trajectory traj = integrate_free_body(s, op, 1e-2, 3);
  std::string csv = trajectory_csv(traj);
  CHECK(csv.rfind("t,LB1,LB2,LB3,energy,casimir,R0,R1,R2,R3,spatial_L_drift\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 rows
}
