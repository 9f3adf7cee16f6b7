#pragma once

#include "core/chart.hpp"

namespace gastar {

using ScalarField = std::function<double(const Vec&)>;
using VectorField = std::function<Vec(const Vec&)>;   // components on xi_i
using MvField = std::function<RealMv(const Vec&)>;    // intrinsic blade container

// Shared zero-contraction container for intrinsic coefficients.
SignaturePtr blade_container(int d);

// Exterior derivative of a form field (blades read in the reciprocal basis):
// coefficients differentiated by central differences of the field.
RealMv exterior_derivative(const MvField& w, const Chart& chart, const Vec& u);

// Interior product of a vector (components on xi_i) with a form.
RealMv interior_product(const Vec& a_components, const RealMv& form, const FrameData& f);

// Covariant derivative D_i of a form field at u.
RealMv covariant_derivative_form(const MvField& w, int i, const Chart& chart, const Vec& u,
                                 const FrameData& f);

// d-dagger via (-1)^{d r + d + 1} star d star; the divergence route -d.A is
// exposed separately for the cross-check.
RealMv coderivative(const MvField& w, int form_grade, const Chart& chart, const Vec& u);
RealMv divergence_route(const MvField& w, const Chart& chart, const Vec& u);

// Lie derivative of a form along a vector field, d(i_a w) + i_a(d w).
RealMv cartan_lie_derivative(const VectorField& a, const MvField& w, const Chart& chart,
                             const Vec& u);

Vec jacobi_lie(const VectorField& a, const VectorField& b, const Chart& chart, const Vec& u);

// Schouten bracket of contravariant multivector fields of homogeneous grades.
RealMv schouten(const MvField& a, int grade_a, const MvField& b, int grade_b, const Chart& chart,
                const Vec& u);

double one_form_eval(const RealMv& form, const Vec& a);
double two_form_eval(const RealMv& form, const Vec& a, const Vec& b);

// Non-coordinate frame package at a point: frame structure functions,
// connection, torsion, and the structure-equation residuals measured through
// the generic exterior-derivative machinery.
using FrameFieldFn = std::function<Mat(const Vec&)>;  // theta[r][i] = theta_r^i

struct NonCoordFrame {
  Mat theta;      // theta_r^i
  Mat theta_inv;  // theta_i^r (indexed [i][r])
  Mat g_frame;
  Tensor3 c;        // C^t_{rs}, indexed [t][r][s]
  Tensor3 gamma;    // Gamma^t_{rs}, indexed [t][r][s]
  Tensor3 torsion;  // T^t_{rs}
  double torsion_max = 0.0;
  double maurer_cartan_residual = 0.0;
  double cartan_first_residual = 0.0;
  double cartan_second_residual = 0.0;
};
NonCoordFrame noncoordinate_frame_at(const Chart& chart, const Vec& u, const FrameFieldFn& frame);

FrameFieldFn coordinate_frame_field(int d);
// Orthonormal frame on a sphere chart: xi_theta and xi_phi / (R sin theta).
FrameFieldFn sphere_orthonormal_frame(double radius);

// Constant symplectic structure on a flat Darboux chart of dimension 2*dof:
// the two-form, the paired bivector, the index-lowering/raising maps, the
// Hamiltonian field of a scalar, and the bracket of two scalars.
class FlatSymplectic {
 public:
  explicit FlatSymplectic(int dof);

  int dof() const { return dof_; }
  int dim() const { return 2 * dof_; }
  const Chart& chart() const { return chart_; }
  const SignaturePtr& container() const { return container_; }

  RealMv omega() const;       // sum e^{q_m} ^ e^{p_m}
  RealMv j_bivector() const;  // sum e_{q_m} ^ e_{p_m}
  // z^flat = i_z Omega for a vector's components; sharp inverts it.
  RealMv flat(const Vec& z) const;
  Vec sharp(const RealMv& one_form) const;
  Vec hamiltonian_field(const ScalarField& h, const Vec& z) const;
  double poisson(const ScalarField& f, const ScalarField& g, const Vec& z) const;

 private:
  int dof_;
  Chart chart_;
  SignaturePtr container_;
};

}  // namespace gastar
