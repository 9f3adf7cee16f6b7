#include "doctest.h"

#include <cmath>

#include "core/calculus.hpp"
#include "core/reports.hpp"

using namespace gastar;

TEST_CASE("exterior derivative on the flat chart") {
  Chart flat = make_plane_chart();
  auto cont = blade_container(2);
  MvField w = [&](const Vec& v) {
    RealMv m(cont);
    m.accumulate(2u, v[0]);  // x1 dx2
    return m;
  };
  RealMv dw = exterior_derivative(w, flat, {0.4, -0.3});
  CHECK(dw.coeff(3u) == doctest::Approx(1.0).epsilon(1e-10));

  // dd f = 0 on a random polynomial scalar
  MvField df = [&](const Vec& v) {
    MvField f = [&](const Vec& p) {
      RealMv m(cont);
      m.accumulate(0u, p[0] * p[0] * p[1] + 3 * p[1] * p[1] - 2 * p[0]);
      return m;
    };
    return exterior_derivative(f, flat, v);
  };
  CHECK(exterior_derivative(df, flat, {0.4, -0.3}).max_abs() < 1e-8);
}

TEST_CASE("sphere volume form is the dual of the unit") {
  Chart sph = make_sphere_chart(1.0);
  Vec u = {1.2, 0.5};
  FrameData f = frames_at(sph, u);
  RealMv vol = hodge_numeric(RealMv::scalar(f.intrinsic, 1.0), f.ginv, f.sqrt_det_g);
  CHECK(vol.coeff(3u) == doctest::Approx(std::sin(u[0])).epsilon(1e-12));
}

TEST_CASE("coderivative equals the negative covariant divergence") {
  Chart sph = make_sphere_chart(1.0);
  auto cont = blade_container(2);
  MvField omega = [&](const Vec& v) {
    RealMv m(cont);
    m.accumulate(1u, std::sin(v[0]) * 0.5 + v[1] * 0.2);
    m.accumulate(2u, std::cos(v[0]) * v[1]);
    return m;
  };
  for (Vec u : {Vec{1.1, 0.7}, Vec{0.8, -0.6}}) {
    RealMv route_star = coderivative(omega, 1, sph, u);
    RealMv route_div = divergence_route(omega, sph, u);
    CHECK((route_star - route_div).max_abs() < 1e-6);
  }
}

TEST_CASE("lie derivative of one-forms matches the component display") {
  Chart flat = make_plane_chart();
  auto cont = blade_container(2);
  Vec u = {0.4, -0.3};
  VectorField a = [](const Vec& v) { return Vec{v[1] * v[1], v[0] + 2.0 * v[1]}; };
  MvField om = [&](const Vec& v) {
    RealMv m(cont);
    m.accumulate(1u, v[0] * v[1]);
    m.accumulate(2u, v[0] - v[1] * v[1]);
    return m;
  };
  RealMv lie = cartan_lie_derivative(a, om, flat, u);
  Vec av = a(u);
  double w1 = u[0] * u[1], w2 = u[0] - u[1] * u[1];
  double expect1 = av[0] * u[1] + av[1] * u[0] + 0.0 * w1 + 1.0 * w2;
  double expect2 = av[0] * 1.0 + av[1] * (-2.0 * u[1]) + 2.0 * u[1] * w1 + 2.0 * w2;
  CHECK(lie.coeff(1u) == doctest::Approx(expect1).epsilon(1e-9));
  CHECK(lie.coeff(2u) == doctest::Approx(expect2).epsilon(1e-9));

  // constant field and constant form
  VectorField ca = [](const Vec&) { return Vec{1.0, -2.0}; };
  MvField cw = [&](const Vec&) {
    RealMv m(cont);
    m.accumulate(1u, 0.7);
    return m;
  };
  CHECK(cartan_lie_derivative(ca, cw, flat, u).max_abs() < 1e-12);
}

TEST_CASE("oscillator flow preserves the flat symplectic form") {
  Chart flat = make_flat_chart(2);
  auto cont = blade_container(2);
  MvField omega = [&](const Vec&) {
    RealMv m(cont);
    m.accumulate(3u, 1.0);
    return m;
  };
  VectorField h = [](const Vec& z) { return Vec{z[1], -z[0]}; };
  CHECK(cartan_lie_derivative(h, omega, flat, {0.3, 0.8}).max_abs() < 1e-10);
}

TEST_CASE("coordinate frames commute") {
  Chart sph = make_sphere_chart(1.0);
  VectorField xi0 = [](const Vec&) { return Vec{1.0, 0.0}; };
  VectorField xi1 = [](const Vec&) { return Vec{0.0, 1.0}; };
  Vec jl = jacobi_lie(xi0, xi1, sph, {1.0, 0.4});
  CHECK(std::fabs(jl[0]) < 1e-12);
  CHECK(std::fabs(jl[1]) < 1e-12);
}

TEST_CASE("graded bracket reductions") {
  Chart flat = make_plane_chart();
  auto cont = blade_container(2);
  Vec u = {0.4, -0.3};
  MvField fsc = [&](const Vec& v) {
    RealMv m(cont);
    m.accumulate(0u, v[0] * v[0] + v[1]);
    return m;
  };
  MvField gsc = [&](const Vec& v) {
    RealMv m(cont);
    m.accumulate(0u, v[1] * v[0]);
    return m;
  };
  CHECK(schouten(fsc, 0, gsc, 0, flat, u).is_zero());

  MvField av = [&](const Vec& v) {
    RealMv m(cont);
    m.accumulate(1u, v[1] * v[1]);
    m.accumulate(2u, v[0] + 2 * v[1]);
    return m;
  };
  VectorField avf = [](const Vec& v) { return Vec{v[1] * v[1], v[0] + 2 * v[1]}; };
  RealMv adf = schouten(av, 1, fsc, 0, flat, u);
  CHECK(adf.coeff(0u) == doctest::Approx((-0.3) * (-0.3) * (2 * 0.4) + (0.4 + 2 * (-0.3)) * 1.0)
                             .epsilon(1e-9));

  MvField bv = [&](const Vec& v) {
    RealMv m(cont);
    m.accumulate(1u, v[0]);
    m.accumulate(2u, -v[1] * v[0]);
    return m;
  };
  VectorField bvf = [](const Vec& v) { return Vec{v[0], -v[1] * v[0]}; };
  RealMv snb = schouten(av, 1, bv, 1, flat, u);
  Vec jlb = jacobi_lie(avf, bvf, flat, u);
  CHECK(snb.coeff(1u) == doctest::Approx(jlb[0]).epsilon(1e-7));
  CHECK(snb.coeff(2u) == doctest::Approx(jlb[1]).epsilon(1e-7));
}

TEST_CASE("graded symmetry and super jacobi on low grades") {
  Chart sph = make_sphere_chart(1.0);
  auto cont = blade_container(2);
  Vec u = {1.1, 0.7};
  MvField a1 = [&](const Vec& v) {
    RealMv m(cont);
    m.accumulate(1u, std::sin(v[0]) + 0.3 * v[1]);
    m.accumulate(2u, std::cos(v[0]));
    return m;
  };
  MvField b2 = [&](const Vec& v) {
    RealMv m(cont);
    m.accumulate(3u, std::sin(v[0]) + v[1] * v[1]);
    return m;
  };
  MvField f0 = [&](const Vec& v) {
    RealMv m(cont);
    m.accumulate(0u, v[0] * v[1]);
    return m;
  };
  // [A_r, B_s] = (-1)^{rs} [B_s, A_r]
  RealMv s12 = schouten(a1, 1, b2, 2, sph, u);
  RealMv s21 = schouten(b2, 2, a1, 1, sph, u);
  CHECK((s12 - s21).max_abs() < 1e-6);
  RealMv s11 = schouten(a1, 1, a1, 1, sph, u);
  CHECK(s11.max_abs() < 1e-7);
  // grades: vector-bivector bracket lands on grade 2
  if (!s12.is_zero()) CHECK(s12.homogeneous_grade() == 2);

  // super jacobi on (0, 1, 2)-grade fields: signs (-1)^{rt}, (-1)^{rs}, (-1)^{st}
  auto bracket = [&](const MvField& x, int gx, const MvField& y, int gy, const Vec& point) {
    return schouten(x, gx, y, gy, sph, point);
  };
  int r = 1, s = 2, t = 0;
  MvField ab = [&](const Vec& v) { return bracket(a1, r, b2, s, v); };
  MvField bf = [&](const Vec& v) { return bracket(b2, s, f0, t, v); };
  MvField fa = [&](const Vec& v) { return bracket(f0, t, a1, r, v); };
  RealMv term1 = bracket(ab, r + s - 1, f0, t, u);
  RealMv term2 = bracket(bf, s + t - 1, a1, r, u);
  RealMv term3 = bracket(fa, t + r - 1, b2, s, u);
  auto sgn = [](int e) { return (e & 1) ? -1.0 : 1.0; };
  RealMv total = term1.scaled(sgn(r * t)) + term2.scaled(sgn(r * s)) + term3.scaled(sgn(s * t));
  CHECK(total.max_abs() < 1e-6);
}

TEST_CASE("structure equations in coordinate and orthonormal frames") {
  Chart sph = make_sphere_chart(1.0);
  Vec u = {1.1, 0.7};
  NonCoordFrame ortho = noncoordinate_frame_at(sph, u, sphere_orthonormal_frame(1.0));
  CHECK(ortho.c[1][0][1] == doctest::Approx(-std::cos(u[0]) / std::sin(u[0])).epsilon(1e-6));
  CHECK(ortho.torsion_max < 1e-8);
  CHECK(ortho.maurer_cartan_residual < 1e-6);
  CHECK(ortho.cartan_first_residual < 1e-6);
  CHECK(ortho.cartan_second_residual < 1e-6);
  // orthonormal frame metric is the identity
  CHECK(ortho.g_frame[0][0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ortho.g_frame[1][1] == doctest::Approx(1.0).epsilon(1e-10));

  NonCoordFrame coord = noncoordinate_frame_at(sph, u, coordinate_frame_field(2));
  FrameData f = frames_at(sph, u);
  for (int t = 0; t < 2; ++t)
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s) {
        CHECK(coord.gamma[t][r][s] == doctest::Approx(f.gamma[t][r][s]).epsilon(1e-6));
        CHECK(std::fabs(coord.c[t][r][s]) < 1e-9);
      }
  CHECK(coord.torsion_max < 1e-8);
  CHECK(coord.cartan_first_residual < 1e-6);
  CHECK(coord.cartan_second_residual < 1e-6);

  Chart tor = make_torus_chart(2.0, 0.5);
  NonCoordFrame tc = noncoordinate_frame_at(tor, {0.7, 1.1}, coordinate_frame_field(2));
  CHECK(tc.torsion_max < 1e-8);
  CHECK(tc.cartan_first_residual < 1e-6);
  CHECK(tc.cartan_second_residual < 1e-6);

  Chart flat = make_plane_chart();
  NonCoordFrame fc = noncoordinate_frame_at(flat, {0.2, -0.1}, coordinate_frame_field(2));
  CHECK(fc.cartan_first_residual < 1e-9);
  CHECK(fc.torsion_max < 1e-12);
}

TEST_CASE("flat symplectic structure maps") {
  FlatSymplectic sy(2);
  Rng rng(149);
  for (int it = 0; it < 10; ++it) {
    Vec z(4);
    for (auto& v : z) v = rng.real(-2, 2);
    Vec back = sy.sharp(sy.flat(z));
    for (int a = 0; a < 4; ++a) CHECK(back[static_cast<size_t>(a)] == doctest::Approx(z[static_cast<size_t>(a)]).epsilon(1e-12));
  }
  // h_H . Omega = dH for the oscillator and {q, p} = 1
  ScalarField h = [](const Vec& z) { return 0.5 * (z[0] * z[0] + z[2] * z[2]); };
  Vec z = {0.3, -0.4, 0.7, 1.1};
  Vec field = sy.hamiltonian_field(h, z);
  // dq1 = p1 direction, dp1 = -q1
  CHECK(field[0] == doctest::Approx(z[2]).epsilon(1e-9));
  CHECK(field[2] == doctest::Approx(-z[0]).epsilon(1e-9));
  RealMv lhs = sy.flat(field);
  // dH components by central differences
  RealMv dh(sy.container());
  double step = 1e-5;
  for (int a = 0; a < 4; ++a) {
    Vec up = z, dn = z;
    up[static_cast<size_t>(a)] += step;
    dn[static_cast<size_t>(a)] -= step;
    dh.accumulate(1u << a, (h(up) - h(dn)) / (2 * step));
  }
  CHECK((lhs - dh).max_abs() < 1e-9);
  ScalarField fq = [](const Vec& v) { return v[0]; };
  ScalarField fp = [](const Vec& v) { return v[2]; };
  CHECK(sy.poisson(fq, fp, z) == doctest::Approx(1.0).epsilon(1e-9));
  // the paired bivector squares to minus one as an operator
  FrameData f = frames_at(sy.chart(), Vec(4, 0.0));
  RealMv j = sy.j_bivector();
  for (int a = 0; a < 4; ++a) {
    RealMv e(sy.container());
    e.accumulate(1u << a, 1.0);
    RealMv once = inner_numeric(e, j, f.ginv);
    RealMv twice = inner_numeric(once, j, f.ginv);
    CHECK((twice + e).max_abs() < 1e-12);
  }
}
