#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/algebra.hpp"

namespace gastar {

using Vec3 = std::array<double, 3>;
// Even-subalgebra element s + v1 B1 + v2 B2 + v3 B3 with B1 = e2e3,
// B2 = e3e1, B3 = e1e2.
using Rotor3 = std::array<double, 4>;

Rotor3 rotor_mul(const Rotor3& a, const Rotor3& b);
Rotor3 rotor_rev(const Rotor3& a);
double rotor_norm(const Rotor3& a);
// Sandwich R (0, v) reverse(R), returning the bivector components.
Vec3 rotor_sandwich(const Rotor3& r, const Vec3& bivector);

// Symmetric positive operator on the bivector components; diagonal in the
// principal frame or assembled from point masses via I(B) = sum m x ^ (x . B).
class InertiaOperator {
 public:
  using Mat3 = std::array<std::array<double, 3>, 3>;

  static InertiaOperator principal(double i1, double i2, double i3);
  static InertiaOperator from_point_masses(
      const std::vector<std::pair<double, Vec3>>& samples);

  Vec3 apply(const Vec3& w) const;
  Vec3 apply_inverse(const Vec3& l) const;
  const Mat3& matrix() const { return m_; }

  bool symmetric_on(const Vec3& a, const Vec3& b, double tol = 1e-12) const;
  bool positive_on(const Vec3& b) const;

 private:
  Mat3 m_{};
  Mat3 inv_{};
  InertiaOperator() = default;
  void finish();
};

struct RigidState {
  double t = 0.0;
  Vec3 lb{};       // body angular momentum components
  Rotor3 rotor{};  // attitude
};

// dL/dt = L x W with W = I^{-1} L; the same right-hand side evaluated
// through the so(3) Lie-Poisson bracket for the cross-check.
Vec3 euler_rhs(const Vec3& lb, const InertiaOperator& inertia);
Vec3 euler_rhs_lie_poisson(const Vec3& lb, const InertiaOperator& inertia);

struct TrajectoryRow {
  double t;
  Vec3 lb;
  double energy;
  double casimir;
  Rotor3 rotor;
  double spatial_l_drift;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  double dt = 0.0;
  double casimir_drift = 0.0;
  double energy_drift = 0.0;
  double spatial_l_drift = 0.0;
  const TrajectoryRow& back() const { return rows.back(); }
};

Trajectory integrate_free_body(const RigidState& start, const InertiaOperator& inertia, double dt,
                               int steps);

// max norm of d/dt I(W_B) - W_B x I(W_B) along the trajectory, measured with
// a five-point stencil.
struct PoincareResidual {
  std::vector<double> series;
  double max = 0.0;
};
PoincareResidual poincare_residual(const Trajectory& traj, const InertiaOperator& inertia);

std::string trajectory_csv(const Trajectory& traj);

}  // namespace gastar
