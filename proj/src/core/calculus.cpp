#include "core/calculus.hpp"

#include <cmath>

namespace gastar {

namespace {

int insert_parity(uint32_t mask, int j) {
  return std::popcount(mask & ((1u << j) - 1)) & 1;
}

// Five-point fourth-order stencil; the wider step keeps noise from nested
// finite differences (e.g. connection-coefficient fields) below tolerance.
RealMv field_partial(const MvField& w, int i, const Vec& u, double h) {
  Vec p2 = u, p1 = u, m1 = u, m2 = u;
  p2[static_cast<size_t>(i)] += 2.0 * h;
  p1[static_cast<size_t>(i)] += h;
  m1[static_cast<size_t>(i)] -= h;
  m2[static_cast<size_t>(i)] -= 2.0 * h;
  RealMv acc = -w(p2);
  acc += w(p1).scaled(8.0);
  acc -= w(m1).scaled(8.0);
  acc += w(m2);
  return acc.scaled(1.0 / (12.0 * h));
}

}  // namespace

SignaturePtr blade_container(int d) {
  return signature_from_matrix(
      "blades" + std::to_string(d), SignatureKind::symmetric,
      std::vector<std::vector<Rational>>(static_cast<size_t>(d),
                                         std::vector<Rational>(static_cast<size_t>(d))));
}

RealMv exterior_derivative(const MvField& w, const Chart& chart, const Vec& u) {
  chart.require_in_domain(u);
  const int d = chart.d;
  RealMv out(blade_container(d));
  for (int j = 0; j < d; ++j) {
    RealMv dj = field_partial(w, j, u, chart.fd_step_form);
    for (const auto& [mask, c] : dj.blades()) {
      if (mask & (1u << j)) continue;
      double v = insert_parity(mask, j) ? -c : c;
      out.accumulate(mask | (1u << j), v);
    }
  }
  return out;
}

RealMv interior_product(const Vec& a_components, const RealMv& form, const FrameData& f) {
  const int d = f.d;
  RealMv lowered(form.signature() ? form.signature() : blade_container(d));
  for (int j = 0; j < d; ++j) {
    double acc = 0.0;
    for (int i = 0; i < d; ++i)
      acc += f.g[static_cast<size_t>(j)][static_cast<size_t>(i)] * a_components[static_cast<size_t>(i)];
    lowered.accumulate(1u << j, acc);
  }
  return inner_numeric(lowered, form, f.ginv);
}

RealMv covariant_derivative_form(const MvField& w, int i, const Chart& chart, const Vec& u,
                                 const FrameData& f) {
  const int d = chart.d;
  RealMv out = field_partial(w, i, u, chart.fd_step_form);
  RealMv w0 = w(u);
  for (const auto& [mask, c] : w0.blades()) {
    std::vector<int> bits;
    for (int b = 0; b < d; ++b)
      if (mask & (1u << b)) bits.push_back(b);
    for (size_t pos = 0; pos < bits.size(); ++pos) {
      int t = bits[pos];
      uint32_t rest = mask & ~(1u << t);
      for (int m = 0; m < d; ++m) {
        double gamma = f.gamma[static_cast<size_t>(t)][static_cast<size_t>(i)][static_cast<size_t>(m)];
        if (gamma == 0.0 || (rest & (1u << m))) continue;
        int sgn = ((static_cast<int>(pos) + std::popcount(rest & ((1u << m) - 1))) & 1) ? -1 : 1;
        out.accumulate(rest | (1u << m), -gamma * c * sgn);
      }
    }
  }
  return out;
}

RealMv coderivative(const MvField& w, int form_grade, const Chart& chart, const Vec& u) {
  const int d = chart.d;
  MvField starred = [&](const Vec& v) {
    FrameData f = frames_at(chart, v);
    return hodge_numeric(w(v), f.ginv, f.sqrt_det_g);
  };
  RealMv dsw = exterior_derivative(starred, chart, u);
  FrameData f0 = frames_at(chart, u);
  RealMv out = hodge_numeric(dsw, f0.ginv, f0.sqrt_det_g);
  int pref = (d * form_grade + d + 1) & 1;
  return pref ? -out : out;
}

RealMv divergence_route(const MvField& w, const Chart& chart, const Vec& u) {
  FrameData f = frames_at(chart, u);
  const int d = chart.d;
  RealMv acc(blade_container(d));
  for (int i = 0; i < d; ++i) {
    RealMv di = covariant_derivative_form(w, i, chart, u, f);
    if (di.is_zero()) continue;
    RealMv ei(di.signature());
    ei.accumulate(1u << i, 1.0);
    for (int g : di.grades()) {
      if (g == 0) continue;
      acc += star_numeric(ei, di.grade_part(g), f.ginv).grade_part(g - 1);
    }
  }
  return -acc;
}

RealMv cartan_lie_derivative(const VectorField& a, const MvField& w, const Chart& chart,
                             const Vec& u) {
  MvField iaw = [&](const Vec& v) {
    FrameData f = frames_at(chart, v);
    return interior_product(a(v), w(v), f);
  };
  RealMv term1 = exterior_derivative(iaw, chart, u);
  FrameData f0 = frames_at(chart, u);
  RealMv dw = exterior_derivative(w, chart, u);
  RealMv term2 = interior_product(a(u), dw, f0);
  return term1 + term2;
}

Vec jacobi_lie(const VectorField& a, const VectorField& b, const Chart& chart, const Vec& u) {
  const int d = chart.d;
  double h = chart.fd_step1;
  Vec a0 = a(u), b0 = b(u);
  Vec out(static_cast<size_t>(d), 0.0);
  for (int j = 0; j < d; ++j) {
    Vec up = u, dn = u;
    up[static_cast<size_t>(j)] += h;
    dn[static_cast<size_t>(j)] -= h;
    Vec bp = b(up), bm = b(dn), ap = a(up), am = a(dn);
    for (int i = 0; i < d; ++i) {
      double dbi = (bp[static_cast<size_t>(i)] - bm[static_cast<size_t>(i)]) / (2.0 * h);
      double dai = (ap[static_cast<size_t>(i)] - am[static_cast<size_t>(i)]) / (2.0 * h);
      out[static_cast<size_t>(i)] += a0[static_cast<size_t>(j)] * dbi - b0[static_cast<size_t>(j)] * dai;
    }
  }
  return out;
}

namespace {

RealMv covariant_derivative_vectorlike(const MvField& w, int i, const Chart& chart, const Vec& u,
                                       const FrameData& f) {
  const int d = chart.d;
  RealMv out = field_partial(w, i, u, chart.fd_step_form);
  RealMv w0 = w(u);
  for (const auto& [mask, c] : w0.blades()) {
    std::vector<int> bits;
    for (int b = 0; b < d; ++b)
      if (mask & (1u << b)) bits.push_back(b);
    for (size_t pos = 0; pos < bits.size(); ++pos) {
      int t = bits[pos];
      uint32_t rest = mask & ~(1u << t);
      for (int m = 0; m < d; ++m) {
        double gamma = f.gamma[static_cast<size_t>(m)][static_cast<size_t>(i)][static_cast<size_t>(t)];
        if (gamma == 0.0 || (rest & (1u << m))) continue;
        int sgn = ((static_cast<int>(pos) + std::popcount(rest & ((1u << m) - 1))) & 1) ? -1 : 1;
        out.accumulate(rest | (1u << m), gamma * c * sgn);
      }
    }
  }
  return out;
}

RealMv a_dot_d(const MvField& a, int grade_a, const MvField& b, const Chart& chart, const Vec& u,
               const FrameData& f) {
  const int d = chart.d;
  RealMv out(blade_container(d));
  if (grade_a == 0) return out;
  RealMv a0 = a(u);
  for (int i = 0; i < d; ++i) {
    RealMv xi_up(a0.signature() ? a0.signature() : blade_container(d));
    for (int j = 0; j < d; ++j)
      xi_up.accumulate(1u << j, f.ginv[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    RealMv contracted = star_numeric(a0, xi_up, f.g).grade_part(grade_a - 1);
    if (contracted.is_zero()) continue;
    RealMv dib = covariant_derivative_vectorlike(b, i, chart, u, f);
    if (dib.is_zero()) continue;
    out += wedge(contracted, dib);
  }
  return out;
}

// Frame structure functions and connection only; no residuals, no recursion.
struct FrameConnection {
  Mat theta;
  Mat theta_inv;
  Mat g_frame;
  Mat gf_inv;
  Tensor3 c;
  Tensor3 gamma;
  Tensor3 torsion;
};

FrameConnection frame_connection_at(const Chart& chart, const Vec& u, const FrameFieldFn& frame) {
  const int d = chart.d;
  FrameData f0 = frames_at(chart, u);
  FrameConnection out;
  out.theta = frame(u);
  out.theta_inv = mat_inverse(out.theta);

  out.g_frame.assign(static_cast<size_t>(d), Vec(static_cast<size_t>(d), 0.0));
  for (int r = 0; r < d; ++r)
    for (int s = 0; s < d; ++s) {
      double acc = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          acc += out.theta[static_cast<size_t>(r)][static_cast<size_t>(i)] *
                 out.theta[static_cast<size_t>(s)][static_cast<size_t>(j)] *
                 f0.g[static_cast<size_t>(i)][static_cast<size_t>(j)];
      out.g_frame[static_cast<size_t>(r)][static_cast<size_t>(s)] = acc;
    }
  out.gf_inv = mat_inverse(out.g_frame);

  double h = chart.fd_step1;
  std::vector<Mat> dtheta(static_cast<size_t>(d));
  std::vector<Mat> dgf(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) {
    Vec up = u, dn = u;
    up[static_cast<size_t>(k)] += h;
    dn[static_cast<size_t>(k)] -= h;
    Mat tp = frame(up), tm = frame(dn);
    FrameData fp = frames_at(chart, up);
    FrameData fm = frames_at(chart, dn);
    Mat dt(static_cast<size_t>(d), Vec(static_cast<size_t>(d)));
    Mat dg(static_cast<size_t>(d), Vec(static_cast<size_t>(d)));
    for (int r = 0; r < d; ++r) {
      for (int i = 0; i < d; ++i)
        dt[static_cast<size_t>(r)][static_cast<size_t>(i)] =
            (tp[static_cast<size_t>(r)][static_cast<size_t>(i)] -
             tm[static_cast<size_t>(r)][static_cast<size_t>(i)]) /
            (2.0 * h);
      for (int s = 0; s < d; ++s) {
        double accp = 0.0, accm = 0.0;
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            accp += tp[static_cast<size_t>(r)][static_cast<size_t>(i)] *
                    tp[static_cast<size_t>(s)][static_cast<size_t>(j)] *
                    fp.g[static_cast<size_t>(i)][static_cast<size_t>(j)];
            accm += tm[static_cast<size_t>(r)][static_cast<size_t>(i)] *
                    tm[static_cast<size_t>(s)][static_cast<size_t>(j)] *
                    fm.g[static_cast<size_t>(i)][static_cast<size_t>(j)];
          }
        dg[static_cast<size_t>(r)][static_cast<size_t>(s)] = (accp - accm) / (2.0 * h);
      }
    }
    dtheta[static_cast<size_t>(k)] = std::move(dt);
    dgf[static_cast<size_t>(k)] = std::move(dg);
  }

  auto directional = [&](int r, const std::vector<Mat>& field, int a, int b) {
    double acc = 0.0;
    for (int k = 0; k < d; ++k)
      acc += out.theta[static_cast<size_t>(r)][static_cast<size_t>(k)] *
             field[static_cast<size_t>(k)][static_cast<size_t>(a)][static_cast<size_t>(b)];
    return acc;
  };

  out.c.assign(static_cast<size_t>(d), Mat(static_cast<size_t>(d), Vec(static_cast<size_t>(d), 0.0)));
  for (int t = 0; t < d; ++t)
    for (int r = 0; r < d; ++r)
      for (int s = 0; s < d; ++s) {
        double acc = 0.0;
        for (int j = 0; j < d; ++j)
          acc += (directional(r, dtheta, s, j) - directional(s, dtheta, r, j)) *
                 out.theta_inv[static_cast<size_t>(j)][static_cast<size_t>(t)];
        out.c[static_cast<size_t>(t)][static_cast<size_t>(r)][static_cast<size_t>(s)] = acc;
      }

  auto c_low = [&](int r, int s, int w) {
    double acc = 0.0;
    for (int t = 0; t < d; ++t)
      acc += out.g_frame[static_cast<size_t>(t)][static_cast<size_t>(w)] *
             out.c[static_cast<size_t>(t)][static_cast<size_t>(r)][static_cast<size_t>(s)];
    return acc;
  };

  out.gamma.assign(static_cast<size_t>(d), Mat(static_cast<size_t>(d), Vec(static_cast<size_t>(d), 0.0)));
  for (int t = 0; t < d; ++t)
    for (int r = 0; r < d; ++r)
      for (int s = 0; s < d; ++s) {
        double acc = 0.0;
        for (int w = 0; w < d; ++w) {
          double lc = directional(r, dgf, s, w) + directional(s, dgf, r, w) -
                      directional(w, dgf, r, s);
          double ct = c_low(w, r, s) + c_low(w, s, r) - c_low(s, r, w);
          acc += 0.5 * out.gf_inv[static_cast<size_t>(t)][static_cast<size_t>(w)] * (lc + ct);
        }
        out.gamma[static_cast<size_t>(t)][static_cast<size_t>(r)][static_cast<size_t>(s)] = acc;
      }

  out.torsion.assign(static_cast<size_t>(d),
                     Mat(static_cast<size_t>(d), Vec(static_cast<size_t>(d), 0.0)));
  for (int t = 0; t < d; ++t)
    for (int r = 0; r < d; ++r)
      for (int s = 0; s < d; ++s)
        out.torsion[static_cast<size_t>(t)][static_cast<size_t>(r)][static_cast<size_t>(s)] =
            out.gamma[static_cast<size_t>(t)][static_cast<size_t>(r)][static_cast<size_t>(s)] -
            out.gamma[static_cast<size_t>(t)][static_cast<size_t>(s)][static_cast<size_t>(r)] -
            out.c[static_cast<size_t>(t)][static_cast<size_t>(r)][static_cast<size_t>(s)];
  return out;
}

}  // namespace

RealMv schouten(const MvField& a, int grade_a, const MvField& b, int grade_b, const Chart& chart,
                const Vec& u) {
  FrameData f = frames_at(chart, u);
  RealMv t1 = a_dot_d(a, grade_a, b, chart, u, f);
  RealMv t2 = a_dot_d(b, grade_b, a, chart, u, f);
  int s1 = (grade_a - 1) & 1;
  int s2 = (grade_a * grade_b + grade_b - 1) & 1;
  RealMv out = s1 ? -t1 : t1;
  out += s2 ? -t2 : t2;
  return out;
}

double one_form_eval(const RealMv& form, const Vec& a) {
  double acc = 0.0;
  for (const auto& [mask, c] : form.blades()) {
    if (std::popcount(mask) != 1) continue;
    int i = std::countr_zero(mask);
    acc += c * a[static_cast<size_t>(i)];
  }
  return acc;
}

double two_form_eval(const RealMv& form, const Vec& a, const Vec& b) {
  double acc = 0.0;
  for (const auto& [mask, c] : form.blades()) {
    if (std::popcount(mask) != 2) continue;
    int i = std::countr_zero(mask);
    int j = std::countr_zero(mask & (mask - 1));
    acc += c * (a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)] -
                a[static_cast<size_t>(j)] * b[static_cast<size_t>(i)]);
  }
  return acc;
}

FrameFieldFn coordinate_frame_field(int d) {
  return [d](const Vec&) {
    Mat t(static_cast<size_t>(d), Vec(static_cast<size_t>(d), 0.0));
    for (int i = 0; i < d; ++i) t[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
    return t;
  };
}

FrameFieldFn sphere_orthonormal_frame(double radius) {
  return [radius](const Vec& u) {
    Mat t(2, Vec(2, 0.0));
    t[0][0] = 1.0 / radius;
    t[1][1] = 1.0 / (radius * std::sin(u[0]));
    return t;
  };
}

NonCoordFrame noncoordinate_frame_at(const Chart& chart, const Vec& u, const FrameFieldFn& frame) {
  const int d = chart.d;
  FrameConnection fc = frame_connection_at(chart, u, frame);
  NonCoordFrame out;
  out.theta = fc.theta;
  out.theta_inv = fc.theta_inv;
  out.g_frame = fc.g_frame;
  out.c = fc.c;
  out.gamma = fc.gamma;
  out.torsion = fc.torsion;
  for (int t = 0; t < d; ++t)
    for (int r = 0; r < d; ++r)
      for (int s = 0; s < d; ++s)
        out.torsion_max = std::max(
            out.torsion_max,
            std::fabs(out.torsion[static_cast<size_t>(t)][static_cast<size_t>(r)][static_cast<size_t>(s)]));

  std::vector<Vec> frame_vecs(static_cast<size_t>(d), Vec(static_cast<size_t>(d)));
  for (int r = 0; r < d; ++r)
    for (int i = 0; i < d; ++i)
      frame_vecs[static_cast<size_t>(r)][static_cast<size_t>(i)] =
          out.theta[static_cast<size_t>(r)][static_cast<size_t>(i)];

  // Maurer-Cartan and the second structure equation, with d computed by the
  // generic machinery on the reciprocal frame one-forms.
  for (int t = 0; t < d; ++t) {
    MvField theta_form = [&, t](const Vec& v) {
      Mat thinv = mat_inverse(frame(v));
      RealMv form(blade_container(d));
      for (int i = 0; i < d; ++i)
        form.accumulate(1u << i, thinv[static_cast<size_t>(i)][static_cast<size_t>(t)]);
      return form;
    };
    RealMv dtheta_t = exterior_derivative(theta_form, chart, u);
    for (int r = 0; r < d; ++r)
      for (int s = 0; s < d; ++s) {
        double lhs = two_form_eval(dtheta_t, frame_vecs[static_cast<size_t>(r)],
                                   frame_vecs[static_cast<size_t>(s)]);
        out.maurer_cartan_residual = std::max(
            out.maurer_cartan_residual,
            std::fabs(lhs + out.c[static_cast<size_t>(t)][static_cast<size_t>(r)][static_cast<size_t>(s)]));
        double omega_theta =
            out.gamma[static_cast<size_t>(t)][static_cast<size_t>(r)][static_cast<size_t>(s)] -
            out.gamma[static_cast<size_t>(t)][static_cast<size_t>(s)][static_cast<size_t>(r)];
        out.cartan_second_residual = std::max(
            out.cartan_second_residual,
            std::fabs(lhs + omega_theta -
                      out.torsion[static_cast<size_t>(t)][static_cast<size_t>(r)][static_cast<size_t>(s)]));
      }
  }

  // First structure equation: frame curvature two-form versus
  // d omega^u_t + omega^u_r ^ omega^r_t.
  CurvatureData cur = curvature_at(chart, u);
  for (int uu = 0; uu < d; ++uu) {
    for (int t = 0; t < d; ++t) {
      MvField omega_form = [&, uu, t](const Vec& v) {
        FrameConnection sub = frame_connection_at(chart, v, frame);
        RealMv form(blade_container(d));
        for (int i = 0; i < d; ++i) {
          double acc = 0.0;
          for (int s = 0; s < d; ++s)
            acc += sub.gamma[static_cast<size_t>(uu)][static_cast<size_t>(s)][static_cast<size_t>(t)] *
                   sub.theta_inv[static_cast<size_t>(i)][static_cast<size_t>(s)];
          form.accumulate(1u << i, acc);
        }
        return form;
      };
      RealMv domega = exterior_derivative(omega_form, chart, u);
      for (int r = 0; r < d; ++r) {
        for (int s = 0; s < d; ++s) {
          double lhs = 0.0;
          for (int l = 0; l < d; ++l)
            for (int i = 0; i < d; ++i)
              for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                  lhs += out.theta_inv[static_cast<size_t>(l)][static_cast<size_t>(uu)] *
                         out.theta[static_cast<size_t>(r)][static_cast<size_t>(i)] *
                         out.theta[static_cast<size_t>(s)][static_cast<size_t>(j)] *
                         out.theta[static_cast<size_t>(t)][static_cast<size_t>(k)] *
                         cur.riemann[static_cast<size_t>(l)][static_cast<size_t>(i)]
                                    [static_cast<size_t>(j)][static_cast<size_t>(k)];
          double rhs = two_form_eval(domega, frame_vecs[static_cast<size_t>(r)],
                                     frame_vecs[static_cast<size_t>(s)]);
          for (int w = 0; w < d; ++w)
            rhs += out.gamma[static_cast<size_t>(uu)][static_cast<size_t>(r)][static_cast<size_t>(w)] *
                       out.gamma[static_cast<size_t>(w)][static_cast<size_t>(s)][static_cast<size_t>(t)] -
                   out.gamma[static_cast<size_t>(uu)][static_cast<size_t>(s)][static_cast<size_t>(w)] *
                       out.gamma[static_cast<size_t>(w)][static_cast<size_t>(r)][static_cast<size_t>(t)];
          out.cartan_first_residual = std::max(out.cartan_first_residual, std::fabs(lhs - rhs));
        }
      }
    }
  }
  return out;
}

FlatSymplectic::FlatSymplectic(int dof) : dof_(dof), chart_(make_flat_chart(2 * dof)) {
  if (dof < 1) throw math_error("symplectic chart needs at least one degree of freedom");
  chart_.fd_step1 = 1e-5;
  container_ = blade_container(2 * dof);
}

RealMv FlatSymplectic::omega() const {
  RealMv m(container_);
  for (int k = 0; k < dof_; ++k) m.accumulate((1u << k) | (1u << (dof_ + k)), 1.0);
  return m;
}

RealMv FlatSymplectic::j_bivector() const { return omega(); }

RealMv FlatSymplectic::flat(const Vec& z) const {
  FrameData f = frames_at(chart_, Vec(static_cast<size_t>(dim()), 0.0));
  return interior_product(z, omega(), f);
}

// inverse of flat: z^{q_m} = w_{p_m}, z^{p_m} = -w_{q_m}
Vec FlatSymplectic::sharp(const RealMv& one_form) const {
  Vec out(static_cast<size_t>(dim()), 0.0);
  for (const auto& [mask, c] : one_form.blades()) {
    if (std::popcount(mask) != 1) throw math_error("sharp expects a one-form");
    int a = std::countr_zero(mask);
    if (a < dof_)
      out[static_cast<size_t>(dof_ + a)] = -c;
    else
      out[static_cast<size_t>(a - dof_)] = c;
  }
  return out;
}

Vec FlatSymplectic::hamiltonian_field(const ScalarField& h, const Vec& z) const {
  const int n = dim();
  double step = chart_.fd_step1;
  Vec grad(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    Vec up = z, dn = z;
    up[static_cast<size_t>(i)] += step;
    dn[static_cast<size_t>(i)] -= step;
    grad[static_cast<size_t>(i)] = (h(up) - h(dn)) / (2.0 * step);
  }
  Vec out(static_cast<size_t>(n), 0.0);
  for (int m = 0; m < dof_; ++m) {
    out[static_cast<size_t>(m)] = grad[static_cast<size_t>(dof_ + m)];
    out[static_cast<size_t>(dof_ + m)] = -grad[static_cast<size_t>(m)];
  }
  return out;
}

double FlatSymplectic::poisson(const ScalarField& f, const ScalarField& g, const Vec& z) const {
  Vec hf = hamiltonian_field(f, z);
  Vec hg = hamiltonian_field(g, z);
  return two_form_eval(omega(), hf, hg);
}

}  // namespace gastar
