#include "core/momentum.hpp"

#include <cmath>

namespace gastar {

AngularMomentumReport angular_momentum_report() {
  AngularMomentumReport rep;
  PhaseSpace ps = PhaseSpace::darboux(3);
  const RegistryPtr& reg = ps.registry();
  auto q = [&](int i) { return ps.var("q" + std::to_string(i + 1)); };
  auto p = [&](int i) { return ps.var("p" + std::to_string(i + 1)); };

  int eps[3][3][3] = {};
  eps[0][1][2] = eps[1][2][0] = eps[2][0][1] = 1;
  eps[0][2][1] = eps[2][1][0] = eps[1][0][2] = -1;

  for (int i = 0; i < 3; ++i) {
    PolyScalar pi;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (eps[i][j][k]) pi += (q(j) * p(k)).scaled(CRational(Rational(eps[i][j][k])));
    rep.momenta.push_back(pi);
  }

  // {P_i, P_j} = eps_ijk P_k
  rep.algebra_ok = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      PolyScalar lhs = poisson_bracket(rep.momenta[static_cast<size_t>(i)],
                                       rep.momenta[static_cast<size_t>(j)], ps);
      PolyScalar rhs;
      for (int k = 0; k < 3; ++k)
        if (eps[i][j][k])
          rhs += rep.momenta[static_cast<size_t>(k)].scaled(CRational(Rational(eps[i][j][k])));
      if (lhs != rhs) rep.algebra_ok = false;
    }

  // doubled carrier: eta_1..eta_3 (bits 0..2), rho^1..rho^3 (bits 3..5)
  auto sig6 = euclidean_signature(6);
  auto eta = [&](int i) { return PolyMv::basis_vector(sig6, i); };
  auto rho = [&](int i) { return PolyMv::basis_vector(sig6, 3 + i); };
  std::vector<std::string> coords = {"q1", "q2", "q3", "p1", "p2", "p3"};

  // rotation generators on the base (the left-action orientation) and their
  // cotangent lifts
  std::vector<PolyMv> lifted;
  for (int i = 0; i < 3; ++i) {
    PolyMv b(sig6);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (eps[i][j][k] && j < k) {
          Rational c(-eps[i][j][k]);  // -B_i generates the rotation h_{P_i}
          b += wedge(eta(j), eta(k)).scaled(c);
          b += wedge(rho(j), rho(k)).scaled(c);
        }
    lifted.push_back(b);
  }

  // h_P components: (dP/dp_i, -dP/dq^i) on (eta_i, rho^i)
  auto hamiltonian_field = [&](const PolyScalar& f) {
    std::vector<PolyScalar> comp(6);
    for (int i = 0; i < 3; ++i) {
      comp[static_cast<size_t>(i)] = f.diff("p" + std::to_string(i + 1));
      comp[static_cast<size_t>(3 + i)] = -f.diff("q" + std::to_string(i + 1));
    }
    return comp;
  };

  rep.field_match_ok = true;
  for (int i = 0; i < 3; ++i) {
    PolyField lift_field = induced_field(lifted[static_cast<size_t>(i)], reg, coords);
    std::vector<PolyScalar> h = hamiltonian_field(rep.momenta[static_cast<size_t>(i)]);
    for (int a = 0; a < 6; ++a)
      if (lift_field.components[static_cast<size_t>(a)] != h[static_cast<size_t>(a)])
        rep.field_match_ok = false;
  }

  // reference field of the lift of eta1^eta2:
  //   q2 eta1 - q1 eta2 + p2 rho1 - p1 rho2
  {
    PolyMv b3(sig6);
    b3 += wedge(eta(0), eta(1));
    b3 += wedge(rho(0), rho(1));
    PolyField f = induced_field(b3, reg, coords);
    std::vector<PolyScalar> expect(6);
    expect[0] = q(1);
    expect[1] = -q(0);
    expect[3] = p(1);
    expect[4] = -p(0);
    rep.display_match_ok = true;
    for (int a = 0; a < 6; ++a)
      if (f.components[static_cast<size_t>(a)] != expect[static_cast<size_t>(a)])
        rep.display_match_ok = false;
  }

  // infinitesimal equivariance on the generator basis
  rep.equivariance_ok = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      PolyMv prod = commutator(lifted[static_cast<size_t>(i)], lifted[static_cast<size_t>(j)]);
      // expand in the lifted basis
      PolyScalar expanded;
      for (int k = 0; k < 3; ++k) {
        PolyScalar coeff = pairing(lifted[static_cast<size_t>(k)], prod)
                               .scaled(CRational(Rational(1, 2)));  // <rev(B_k) T>_0 with |B|^2 = 2
        expanded += rep.momenta[static_cast<size_t>(k)] * coeff;
      }
      PolyScalar br = poisson_bracket(rep.momenta[static_cast<size_t>(i)],
                                      rep.momenta[static_cast<size_t>(j)], ps);
      if (expanded != br) rep.equivariance_ok = false;
    }
  return rep;
}

CircleActionReport circle_action_report(int grid_theta, int grid_phi, double theta_lo,
                                        double theta_hi) {
  CircleActionReport rep;
  rep.grid_theta = grid_theta;
  rep.grid_phi = grid_phi;
  Chart sphere = make_sphere_chart(1.0);
  auto container = blade_container(2);

  // volume two-form Omega = sin(theta) e^theta e^phi
  MvField omega = [&](const Vec& v) {
    RealMv m(container);
    m.accumulate(3u, std::sin(v[0]));
    return m;
  };
  MvField p_field = [&](const Vec& v) {
    RealMv m(container);
    m.accumulate(0u, std::cos(v[0]));
    return m;
  };

  auto ambient = euclidean_signature(3);
  RealMv b(ambient);  // -sigma1 sigma2 generates the left rotation about x^3
  b.accumulate(3u, -1.0);

  double lo = theta_lo, hi = theta_hi;
  for (int it = 0; it < grid_theta; ++it) {
    double theta = lo + (hi - lo) * (static_cast<double>(it) + 0.5) / grid_theta;
    for (int ip = 0; ip < grid_phi; ++ip) {
      double phi = -M_PI + 2.0 * M_PI * (static_cast<double>(ip) + 0.5) / grid_phi;
      Vec u = {theta, phi};
      FrameData f = frames_at(sphere, u);

      RealMv xvec(ambient);
      for (int a = 0; a < 3; ++a) xvec.accumulate(1u << a, f.x[static_cast<size_t>(a)]);
      RealMv bx = inner(b, xvec);
      // intrinsic components of the induced field
      Vec comp(2, 0.0);
      for (int i = 0; i < 2; ++i)
        comp[static_cast<size_t>(i)] = star(bx, f.xi_up[static_cast<size_t>(i)]).scalar_part();
      rep.field_residual = std::max(rep.field_residual, std::fabs(comp[0]));
      rep.field_residual = std::max(rep.field_residual, std::fabs(comp[1] - 1.0));

      RealMv contraction = interior_product(comp, omega(u), f);
      RealMv dp = exterior_derivative(p_field, sphere, u);
      rep.pde_residual = std::max(rep.pde_residual, (contraction - dp).max_abs());
    }
  }

  {
    Vec u = {M_PI / 2.0, 0.0};
    FrameData f = frames_at(sphere, u);
    RealMv xvec(ambient);
    for (int a = 0; a < 3; ++a) xvec.accumulate(1u << a, f.x[static_cast<size_t>(a)]);
    RealMv bx = inner(b, xvec);
    rep.equator_check = (bx - f.xi[1]).max_abs();
  }
  {
    Vec pole_x;
    Vec u = {0.0, 0.0};
    sphere.position(u, pole_x);
    rep.pole_value = pole_x[2];
  }
  return rep;
}

}  // namespace gastar
