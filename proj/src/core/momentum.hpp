#pragma once

#include "core/algebra.hpp"
#include "core/calculus.hpp"
#include "core/moyal.hpp"

namespace gastar {

// Angular momentum functions P_i = eps_ijk q^j p_k on a 3-dof phase space,
// checked against the rotor action they generate on the doubled carrier
// space. All residuals are exact.
struct AngularMomentumReport {
  std::vector<PolyScalar> momenta;
  bool algebra_ok = false;        // {P_i, P_j} = eps_ijk P_k
  bool field_match_ok = false;    // h_{P_i} equals the lifted left-rotation field
  bool display_match_ok = false;  // lift of eta1^eta2 reproduces the reference field
  bool equivariance_ok = false;   // P_{A x B} = {P_A, P_B} on the generator basis
  bool all() const { return algebra_ok && field_match_ok && display_match_ok && equivariance_ok; }
};
AngularMomentumReport angular_momentum_report();

// Circle action around the vertical axis of the unit sphere: the induced
// field is xi_phi with Hamilton function cos(theta); the defining relation is
// measured on an interior grid.
struct CircleActionReport {
  int grid_theta = 0;
  int grid_phi = 0;
  double pde_residual = 0.0;      // max |i_{xi_phi} Omega - dP|
  double field_residual = 0.0;    // max |B.x - xi_phi| over the grid
  double equator_check = 0.0;     // |B.x - d_phi x| at theta = pi/2, phi = 0
  double pole_value = 0.0;        // embedding x^3 at theta = 0
};
// theta_lo/theta_hi override the default interior band; a grid touching the
// pole guard raises an error.
CircleActionReport circle_action_report(int grid_theta, int grid_phi, double theta_lo = 0.06,
                                        double theta_hi = 3.0815926535897933);

}  // namespace gastar
