#pragma once

#include <functional>
#include <string>
#include <vector>

#include "core/multivector.hpp"

namespace gastar {

using Vec = std::vector<double>;
using Mat = std::vector<std::vector<double>>;
using Tensor3 = std::vector<Mat>;
using Tensor4 = std::vector<Tensor3>;

// Embedded coordinate patch: smooth map from a d-dimensional box into a flat
// euclidean ambient space. Analytic partial callbacks are preferred; central
// finite differences are the fallback.
struct Chart {
  std::string family;
  int d = 0;
  int dim_ambient = 0;
  std::function<void(const double*, double*)> embed;     // x[D]
  std::function<void(const double*, double*)> embed_d1;  // dx[a*d + i] = d x^a / d u^i
  std::function<void(const double*, double*)> embed_d2;  // dxx[(a*d + i)*d + j]
  std::vector<std::pair<double, double>> domain;
  double fd_step1 = 1e-5;     // first derivatives (two-point central)
  double fd_step2 = 1e-4;     // second derivatives / Christoffel differences
  double fd_step_form = 1e-3; // form-field derivatives (five-point stencil)

  void position(const Vec& u, Vec& x) const;
  void first_partials(const Vec& u, std::vector<Vec>& dx) const;           // [a][i]
  void second_partials(const Vec& u, std::vector<Mat>& dxx) const;         // [a][i][j]
  void require_in_domain(const Vec& u) const;
  bool in_domain(const Vec& u) const;
};

Chart make_plane_chart();                          // d=2 in R^3, z = 0
Chart make_sphere_chart(double radius);            // (theta, phi), poles excluded
Chart make_torus_chart(double ring, double tube);  // (u, v)
Chart make_flat_chart(int dim);                    // identity embedding
// {"family": "plane"|"sphere"|"torus"|"cotangent", ...parameters}
Chart chart_from_json(const std::string& text);

// Pointwise frame package. Christoffel symbols are computed from the metric
// derivatives and cross-checked against the extrinsic second-partial form.
struct FrameData {
  Vec u;
  Vec x;
  int d = 0;
  int dim_ambient = 0;
  SignaturePtr ambient;    // exact euclidean ambient signature
  SignaturePtr intrinsic;  // zero-contraction blade container of dim d
  std::vector<RealMv> xi;      // frame vectors (ambient grade 1)
  std::vector<RealMv> xi_up;   // reciprocal frame
  Mat g;
  Mat ginv;
  double sqrt_det_g = 0.0;
  Tensor3 dg;     // dg[k][i][j] = d_k g_ij
  Tensor3 gamma;  // gamma[i][j][k] = Gamma^i_{jk}
  double christoffel_residual = 0.0;  // metric-vs-extrinsic disagreement
  double compat_residual = 0.0;       // metric compatibility defect
  RealMv unit_pseudoscalar;
  RealMv unit_pseudoscalar_inverse;
};

FrameData frames_at(const Chart& chart, const Vec& u);

// P(A) = (A . I) * I^{-1}, gradewise.
RealMv project(const FrameData& f, const RealMv& ambient_mv);
RealMv normal_part(const FrameData& f, const RealMv& ambient_mv);

// S(a) = xi^j ^ P_perp((a . del) xi_j) for a tangent direction a = a^i xi_i.
RealMv shape_bivector(const Chart& chart, const FrameData& f, const Vec& a_components);

struct CurvatureData {
  Tensor4 riemann;         // [l][i][j][k] = R^l_{ijk}
  double gauss = 0.0;      // sectional curvature, d = 2 charts
  double ricci_cyclic_residual = 0.0;    // a.R(bc) + b.R(ca) + c.R(ab)
  double bianchi_cyclic_residual = 0.0;  // covariant cyclic derivative
};
CurvatureData curvature_at(const Chart& chart, const Vec& u);

// R(ab) for frame directions a = xi_i, b = xi_j as an intrinsic bivector.
RealMv curvature_bivector(const FrameData& f, const CurvatureData& c, int i, int j);

// Star product / inner / Hodge against a pointwise contraction matrix
// (the float counterpart of the exact kernel for position-dependent metrics).
RealMv star_numeric(const RealMv& a, const RealMv& b, const Mat& contraction);
RealMv inner_numeric(const RealMv& a, const RealMv& b, const Mat& contraction);
RealMv hodge_numeric(const RealMv& form, const Mat& ginv, double sqrt_det_g);

Mat mat_inverse(Mat m);
double mat_det(Mat m);

}  // namespace gastar
