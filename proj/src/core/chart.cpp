#include "core/chart.hpp"

#include <cmath>

#include "json.hpp"

namespace gastar {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw math_error(std::string("non-finite value in ") + what);
}

double det_sub(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  const size_t k = rows.size();
  if (k == 0) return 1.0;
  Mat sub(k, Vec(k));
  for (size_t a = 0; a < k; ++a)
    for (size_t b = 0; b < k; ++b)
      sub[a][b] = m[static_cast<size_t>(rows[a])][static_cast<size_t>(cols[b])];
  return mat_det(std::move(sub));
}

std::vector<int> bits_of(uint32_t mask) {
  std::vector<int> out;
  for (int b = 0; b < 32; ++b)
    if (mask & (1u << b)) out.push_back(b);
  return out;
}

}  // namespace

double mat_det(Mat m) {
  const size_t n = m.size();
  double det = 1.0;
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
    if (m[pivot][col] == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

Mat mat_inverse(Mat m) {
  const size_t n = m.size();
  Mat aug(n, Vec(2 * n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1.0;
  }
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::fabs(aug[r][col]) > std::fabs(aug[pivot][col])) pivot = r;
    if (aug[pivot][col] == 0.0) throw math_error("singular matrix");
    std::swap(aug[pivot], aug[col]);
    double inv = 1.0 / aug[col][col];
    for (size_t c = 0; c < 2 * n; ++c) aug[col][c] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = aug[r][col];
      if (f == 0.0) continue;
      for (size_t c = 0; c < 2 * n; ++c) aug[r][c] -= f * aug[col][c];
    }
  }
  Mat out(n, Vec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

void Chart::require_in_domain(const Vec& u) const {
  if (!in_domain(u)) throw math_error("chart point is outside the domain box");
}

bool Chart::in_domain(const Vec& u) const {
  if (static_cast<int>(u.size()) != d) return false;
  for (int i = 0; i < d; ++i) {
    const auto& [lo, hi] = domain[static_cast<size_t>(i)];
    if (u[static_cast<size_t>(i)] < lo || u[static_cast<size_t>(i)] > hi) return false;
  }
  return true;
}

void Chart::position(const Vec& u, Vec& x) const {
  x.assign(static_cast<size_t>(dim_ambient), 0.0);
  embed(u.data(), x.data());
  for (double v : x) require_finite(v, "embedding");
}

void Chart::first_partials(const Vec& u, std::vector<Vec>& dx) const {
  dx.assign(static_cast<size_t>(dim_ambient), Vec(static_cast<size_t>(d), 0.0));
  if (embed_d1) {
    Vec buf(static_cast<size_t>(dim_ambient * d));
    embed_d1(u.data(), buf.data());
    for (int a = 0; a < dim_ambient; ++a)
      for (int i = 0; i < d; ++i) dx[static_cast<size_t>(a)][static_cast<size_t>(i)] = buf[static_cast<size_t>(a * d + i)];
  } else {
    Vec up = u, dn = u, xp, xm;
    for (int i = 0; i < d; ++i) {
      up[static_cast<size_t>(i)] = u[static_cast<size_t>(i)] + fd_step1;
      dn[static_cast<size_t>(i)] = u[static_cast<size_t>(i)] - fd_step1;
      position(up, xp);
      position(dn, xm);
      for (int a = 0; a < dim_ambient; ++a)
        dx[static_cast<size_t>(a)][static_cast<size_t>(i)] =
            (xp[static_cast<size_t>(a)] - xm[static_cast<size_t>(a)]) / (2.0 * fd_step1);
      up[static_cast<size_t>(i)] = u[static_cast<size_t>(i)];
      dn[static_cast<size_t>(i)] = u[static_cast<size_t>(i)];
    }
  }
  for (const auto& row : dx)
    for (double v : row) require_finite(v, "frame vectors");
}

void Chart::second_partials(const Vec& u, std::vector<Mat>& dxx) const {
  dxx.assign(static_cast<size_t>(dim_ambient),
             Mat(static_cast<size_t>(d), Vec(static_cast<size_t>(d), 0.0)));
  if (embed_d2) {
    Vec buf(static_cast<size_t>(dim_ambient * d * d));
    embed_d2(u.data(), buf.data());
    for (int a = 0; a < dim_ambient; ++a)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          dxx[static_cast<size_t>(a)][static_cast<size_t>(i)][static_cast<size_t>(j)] =
              buf[static_cast<size_t>((a * d + i) * d + j)];
  } else {
    // central second differences of the embedding
    Vec x0;
    position(u, x0);
    double h = fd_step2;
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        Vec v;
        Vec w = u;
        if (i == j) {
          Vec xp, xm;
          w[static_cast<size_t>(i)] += h;
          position(w, xp);
          w[static_cast<size_t>(i)] -= 2 * h;
          position(w, xm);
          for (int a = 0; a < dim_ambient; ++a)
            dxx[static_cast<size_t>(a)][static_cast<size_t>(i)][static_cast<size_t>(j)] =
                (xp[static_cast<size_t>(a)] - 2 * x0[static_cast<size_t>(a)] + xm[static_cast<size_t>(a)]) / (h * h);
        } else {
          Vec xpp, xpm, xmp, xmm;
          w = u;
          w[static_cast<size_t>(i)] += h;
          w[static_cast<size_t>(j)] += h;
          position(w, xpp);
          w[static_cast<size_t>(j)] -= 2 * h;
          position(w, xpm);
          w[static_cast<size_t>(i)] -= 2 * h;
          position(w, xmm);
          w[static_cast<size_t>(j)] += 2 * h;
          position(w, xmp);
          for (int a = 0; a < dim_ambient; ++a) {
            double v2 = (xpp[static_cast<size_t>(a)] - xpm[static_cast<size_t>(a)] -
                         xmp[static_cast<size_t>(a)] + xmm[static_cast<size_t>(a)]) /
                        (4 * h * h);
            dxx[static_cast<size_t>(a)][static_cast<size_t>(i)][static_cast<size_t>(j)] = v2;
            dxx[static_cast<size_t>(a)][static_cast<size_t>(j)][static_cast<size_t>(i)] = v2;
          }
        }
      }
    }
  }
}

Chart make_plane_chart() {
  Chart c;
  c.family = "plane";
  c.d = 2;
  c.dim_ambient = 3;
  c.embed = [](const double* u, double* x) {
    x[0] = u[0];
    x[1] = u[1];
    x[2] = 0.0;
  };
  c.embed_d1 = [](const double*, double* dx) {
    for (int k = 0; k < 6; ++k) dx[k] = 0.0;
    dx[0 * 2 + 0] = 1.0;
    dx[1 * 2 + 1] = 1.0;
  };
  c.embed_d2 = [](const double*, double* dxx) {
    for (int k = 0; k < 12; ++k) dxx[k] = 0.0;
  };
  c.domain = {{-10.0, 10.0}, {-10.0, 10.0}};
  return c;
}

Chart make_sphere_chart(double radius) {
  if (radius <= 0.0) throw math_error("sphere radius must be positive");
  Chart c;
  c.family = "sphere";
  c.d = 2;
  c.dim_ambient = 3;
  double r = radius;
  c.embed = [r](const double* u, double* x) {
    x[0] = r * std::sin(u[0]) * std::cos(u[1]);
    x[1] = r * std::sin(u[0]) * std::sin(u[1]);
    x[2] = r * std::cos(u[0]);
  };
  c.embed_d1 = [r](const double* u, double* dx) {
    double st = std::sin(u[0]), ct = std::cos(u[0]);
    double sp = std::sin(u[1]), cp = std::cos(u[1]);
    dx[0 * 2 + 0] = r * ct * cp;
    dx[0 * 2 + 1] = -r * st * sp;
    dx[1 * 2 + 0] = r * ct * sp;
    dx[1 * 2 + 1] = r * st * cp;
    dx[2 * 2 + 0] = -r * st;
    dx[2 * 2 + 1] = 0.0;
  };
  c.embed_d2 = [r](const double* u, double* dxx) {
    double st = std::sin(u[0]), ct = std::cos(u[0]);
    double sp = std::sin(u[1]), cp = std::cos(u[1]);
    auto at = [&](int a, int i, int j) -> double& { return dxx[(a * 2 + i) * 2 + j]; };
    at(0, 0, 0) = -r * st * cp;
    at(0, 0, 1) = -r * ct * sp;
    at(0, 1, 0) = -r * ct * sp;
    at(0, 1, 1) = -r * st * cp;
    at(1, 0, 0) = -r * st * sp;
    at(1, 0, 1) = r * ct * cp;
    at(1, 1, 0) = r * ct * cp;
    at(1, 1, 1) = -r * st * sp;
    at(2, 0, 0) = -r * ct;
    at(2, 0, 1) = 0.0;
    at(2, 1, 0) = 0.0;
    at(2, 1, 1) = 0.0;
  };
  // frame degeneracy guard at the poles
  c.domain = {{0.05, M_PI - 0.05}, {-2.0 * M_PI, 2.0 * M_PI}};
  return c;
}

Chart make_torus_chart(double ring, double tube) {
  if (ring <= tube || tube <= 0.0) throw math_error("torus needs ring > tube > 0");
  Chart c;
  c.family = "torus";
  c.d = 2;
  c.dim_ambient = 3;
  double R = ring, r = tube;
  c.embed = [R, r](const double* u, double* x) {
    double w = R + r * std::cos(u[1]);
    x[0] = w * std::cos(u[0]);
    x[1] = w * std::sin(u[0]);
    x[2] = r * std::sin(u[1]);
  };
  c.embed_d1 = [R, r](const double* u, double* dx) {
    double cu = std::cos(u[0]), su = std::sin(u[0]);
    double cv = std::cos(u[1]), sv = std::sin(u[1]);
    double w = R + r * cv;
    dx[0 * 2 + 0] = -w * su;
    dx[0 * 2 + 1] = -r * sv * cu;
    dx[1 * 2 + 0] = w * cu;
    dx[1 * 2 + 1] = -r * sv * su;
    dx[2 * 2 + 0] = 0.0;
    dx[2 * 2 + 1] = r * cv;
  };
  c.embed_d2 = [R, r](const double* u, double* dxx) {
    double cu = std::cos(u[0]), su = std::sin(u[0]);
    double cv = std::cos(u[1]), sv = std::sin(u[1]);
    double w = R + r * cv;
    auto at = [&](int a, int i, int j) -> double& { return dxx[(a * 2 + i) * 2 + j]; };
    at(0, 0, 0) = -w * cu;
    at(0, 0, 1) = r * sv * su;
    at(0, 1, 0) = r * sv * su;
    at(0, 1, 1) = -r * cv * cu;
    at(1, 0, 0) = -w * su;
    at(1, 0, 1) = -r * sv * cu;
    at(1, 1, 0) = -r * sv * cu;
    at(1, 1, 1) = -r * cv * su;
    at(2, 0, 0) = 0.0;
    at(2, 0, 1) = 0.0;
    at(2, 1, 0) = 0.0;
    at(2, 1, 1) = -r * sv;
  };
  c.domain = {{-2.0 * M_PI, 2.0 * M_PI}, {-2.0 * M_PI, 2.0 * M_PI}};
  return c;
}

Chart make_flat_chart(int dim) {
  if (dim < 1 || dim > 8) throw math_error("flat chart dimension out of range");
  Chart c;
  c.family = "flat";
  c.d = dim;
  c.dim_ambient = dim;
  int n = dim;
  c.embed = [n](const double* u, double* x) {
    for (int i = 0; i < n; ++i) x[i] = u[i];
  };
  c.embed_d1 = [n](const double*, double* dx) {
    for (int k = 0; k < n * n; ++k) dx[k] = 0.0;
    for (int i = 0; i < n; ++i) dx[i * n + i] = 1.0;
  };
  c.embed_d2 = [n](const double*, double* dxx) {
    for (int k = 0; k < n * n * n; ++k) dxx[k] = 0.0;
  };
  c.domain.assign(static_cast<size_t>(dim), {-100.0, 100.0});
  return c;
}

Chart chart_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::string family = j.at("family").get<std::string>();
  if (family == "plane") return make_plane_chart();
  if (family == "sphere") return make_sphere_chart(j.value("radius", 1.0));
  if (family == "torus") return make_torus_chart(j.value("ring", 2.0), j.value("tube", 0.5));
  if (family == "cotangent") return make_flat_chart(2 * j.value("dof", 1));
  if (family == "flat") return make_flat_chart(j.value("dim", 2));
  throw math_error("unknown chart family: " + family);
}

FrameData frames_at(const Chart& chart, const Vec& u) {
  chart.require_in_domain(u);
  FrameData f;
  f.u = u;
  f.d = chart.d;
  f.dim_ambient = chart.dim_ambient;
  chart.position(u, f.x);
  f.ambient = euclidean_signature(chart.dim_ambient);
  f.intrinsic = signature_from_matrix(
      "blades" + std::to_string(chart.d), SignatureKind::symmetric,
      std::vector<std::vector<Rational>>(static_cast<size_t>(chart.d),
                                         std::vector<Rational>(static_cast<size_t>(chart.d))));

  std::vector<Vec> d1;
  std::vector<Mat> d2;
  chart.first_partials(u, d1);
  chart.second_partials(u, d2);

  const int d = chart.d, D = chart.dim_ambient;

  // Analytic callbacks are cross-checked against finite differences once per
  // point; a disagreement flags inconsistent chart derivatives.
  if (chart.embed_d1) {
    double h = chart.fd_step1;
    Vec up = u, dn = u, xp, xm;
    for (int i = 0; i < d; ++i) {
      up[static_cast<size_t>(i)] += h;
      dn[static_cast<size_t>(i)] -= h;
      chart.position(up, xp);
      chart.position(dn, xm);
      for (int a = 0; a < D; ++a) {
        double fd = (xp[static_cast<size_t>(a)] - xm[static_cast<size_t>(a)]) / (2.0 * h);
        if (std::fabs(fd - d1[static_cast<size_t>(a)][static_cast<size_t>(i)]) > 1e-6)
          throw math_error("chart first partials disagree with finite differences");
      }
      up[static_cast<size_t>(i)] = u[static_cast<size_t>(i)];
      dn[static_cast<size_t>(i)] = u[static_cast<size_t>(i)];
    }
  }
  if (chart.embed_d1 && chart.embed_d2) {
    double h = chart.fd_step2;
    Vec up = u, dn = u;
    std::vector<Vec> dp, dm;
    for (int j = 0; j < d; ++j) {
      up[static_cast<size_t>(j)] += h;
      dn[static_cast<size_t>(j)] -= h;
      chart.first_partials(up, dp);
      chart.first_partials(dn, dm);
      for (int a = 0; a < D; ++a)
        for (int i = 0; i < d; ++i) {
          double fd = (dp[static_cast<size_t>(a)][static_cast<size_t>(i)] -
                       dm[static_cast<size_t>(a)][static_cast<size_t>(i)]) /
                      (2.0 * h);
          if (std::fabs(fd - d2[static_cast<size_t>(a)][static_cast<size_t>(i)][static_cast<size_t>(j)]) > 1e-5)
            throw math_error("chart second partials disagree with finite differences");
        }
      up[static_cast<size_t>(j)] = u[static_cast<size_t>(j)];
      dn[static_cast<size_t>(j)] = u[static_cast<size_t>(j)];
    }
  }
  for (int i = 0; i < d; ++i) {
    RealMv v(f.ambient);
    for (int a = 0; a < D; ++a)
      v.accumulate(1u << a, d1[static_cast<size_t>(a)][static_cast<size_t>(i)]);
    f.xi.push_back(std::move(v));
  }

  f.g.assign(static_cast<size_t>(d), Vec(static_cast<size_t>(d), 0.0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double acc = 0.0;
      for (int a = 0; a < D; ++a)
        acc += d1[static_cast<size_t>(a)][static_cast<size_t>(i)] *
               d1[static_cast<size_t>(a)][static_cast<size_t>(j)];
      f.g[static_cast<size_t>(i)][static_cast<size_t>(j)] = acc;
    }
  double detg = mat_det(f.g);
  if (!(detg > 0.0)) throw math_error("degenerate metric on chart (frame vectors dependent)");
  f.sqrt_det_g = std::sqrt(detg);
  f.ginv = mat_inverse(f.g);

  for (int i = 0; i < d; ++i) {
    RealMv v(f.ambient);
    for (int a = 0; a < D; ++a) {
      double acc = 0.0;
      for (int j = 0; j < d; ++j)
        acc += f.ginv[static_cast<size_t>(i)][static_cast<size_t>(j)] *
               d1[static_cast<size_t>(a)][static_cast<size_t>(j)];
      v.accumulate(1u << a, acc);
    }
    f.xi_up.push_back(std::move(v));
  }

  // d_k g_ij from second partials
  f.dg.assign(static_cast<size_t>(d), Mat(static_cast<size_t>(d), Vec(static_cast<size_t>(d), 0.0)));
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double acc = 0.0;
        for (int a = 0; a < D; ++a)
          acc += d2[static_cast<size_t>(a)][static_cast<size_t>(k)][static_cast<size_t>(i)] *
                     d1[static_cast<size_t>(a)][static_cast<size_t>(j)] +
                 d1[static_cast<size_t>(a)][static_cast<size_t>(i)] *
                     d2[static_cast<size_t>(a)][static_cast<size_t>(k)][static_cast<size_t>(j)];
        f.dg[static_cast<size_t>(k)][static_cast<size_t>(i)][static_cast<size_t>(j)] = acc;
      }

  // metric route and extrinsic route
  Tensor3 gamma_metric(static_cast<size_t>(d),
                       Mat(static_cast<size_t>(d), Vec(static_cast<size_t>(d), 0.0)));
  Tensor3 gamma_ext = gamma_metric;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double acc = 0.0;
        for (int l = 0; l < d; ++l)
          acc += 0.5 * f.ginv[static_cast<size_t>(i)][static_cast<size_t>(l)] *
                 (f.dg[static_cast<size_t>(j)][static_cast<size_t>(k)][static_cast<size_t>(l)] +
                  f.dg[static_cast<size_t>(k)][static_cast<size_t>(j)][static_cast<size_t>(l)] -
                  f.dg[static_cast<size_t>(l)][static_cast<size_t>(j)][static_cast<size_t>(k)]);
        gamma_metric[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] = acc;
        double ext = 0.0;
        for (int a = 0; a < D; ++a) {
          double up = 0.0;
          for (int l = 0; l < d; ++l)
            up += f.ginv[static_cast<size_t>(i)][static_cast<size_t>(l)] *
                  d1[static_cast<size_t>(a)][static_cast<size_t>(l)];
          ext += d2[static_cast<size_t>(a)][static_cast<size_t>(j)][static_cast<size_t>(k)] * up;
        }
        gamma_ext[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] = ext;
      }
  double disagreement = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        disagreement = std::max(
            disagreement,
            std::fabs(gamma_metric[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] -
                      gamma_ext[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)]));
  f.christoffel_residual = disagreement;
  double fd_scale = chart.embed_d2 ? 1e-6 : 1e-4;
  if (disagreement > fd_scale)
    throw math_error("christoffel routes disagree; chart derivatives look inconsistent");
  f.gamma = gamma_metric;

  double compat = 0.0;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double r = f.dg[static_cast<size_t>(k)][static_cast<size_t>(i)][static_cast<size_t>(j)];
        for (int l = 0; l < d; ++l)
          r -= f.gamma[static_cast<size_t>(l)][static_cast<size_t>(k)][static_cast<size_t>(i)] *
                   f.g[static_cast<size_t>(l)][static_cast<size_t>(j)] +
               f.gamma[static_cast<size_t>(l)][static_cast<size_t>(k)][static_cast<size_t>(j)] *
                   f.g[static_cast<size_t>(l)][static_cast<size_t>(i)];
        compat = std::max(compat, std::fabs(r));
      }
  f.compat_residual = compat;

  RealMv pseudo = f.xi[0];
  for (int i = 1; i < d; ++i) pseudo = wedge(pseudo, f.xi[static_cast<size_t>(i)]);
  pseudo = pseudo.scaled(1.0 / f.sqrt_det_g);
  RealMv rev = pseudo.reversed();
  double s = star(rev, pseudo).scalar_part();
  f.unit_pseudoscalar = pseudo;
  f.unit_pseudoscalar_inverse = rev.scaled(1.0 / s);
  return f;
}

RealMv project(const FrameData& f, const RealMv& ambient_mv) {
  RealMv out(f.ambient);
  for (int r = 0; r <= f.dim_ambient; ++r) {
    RealMv part = ambient_mv.grade_part(r);
    if (part.is_zero()) continue;
    RealMv dotted = inner(part, f.unit_pseudoscalar);
    out += star(dotted, f.unit_pseudoscalar_inverse).grade_part(r);
  }
  return out;
}

RealMv normal_part(const FrameData& f, const RealMv& ambient_mv) {
  return ambient_mv - project(f, ambient_mv);
}

RealMv shape_bivector(const Chart& chart, const FrameData& f, const Vec& a_components) {
  if (static_cast<int>(a_components.size()) != f.d) throw math_error("direction dimension mismatch");
  std::vector<Mat> d2;
  chart.second_partials(f.u, d2);
  const int d = f.d, D = f.dim_ambient;
  RealMv s(f.ambient);
  for (int j = 0; j < d; ++j) {
    RealMv deriv(f.ambient);
    for (int a = 0; a < D; ++a) {
      double acc = 0.0;
      for (int i = 0; i < d; ++i)
        acc += a_components[static_cast<size_t>(i)] *
               d2[static_cast<size_t>(a)][static_cast<size_t>(i)][static_cast<size_t>(j)];
      deriv.accumulate(1u << a, acc);
    }
    RealMv normal = normal_part(f, deriv);
    s += wedge(f.xi_up[static_cast<size_t>(j)], normal);
  }
  return s;
}

namespace {

// R^l_{ijk} from finite differences of the Christoffel field
// (five-point stencil keeps the error small even where the symbols steepen).
Tensor4 riemann_tensor(const Chart& chart, const Vec& u, const FrameData& f0) {
  const int d = chart.d;
  double h = chart.fd_step2;
  std::vector<Tensor3> dgamma(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    Vec p2 = u, p1 = u, m1 = u, m2 = u;
    p2[static_cast<size_t>(i)] += 2.0 * h;
    p1[static_cast<size_t>(i)] += h;
    m1[static_cast<size_t>(i)] -= h;
    m2[static_cast<size_t>(i)] -= 2.0 * h;
    FrameData fp2 = frames_at(chart, p2);
    FrameData fp1 = frames_at(chart, p1);
    FrameData fm1 = frames_at(chart, m1);
    FrameData fm2 = frames_at(chart, m2);
    Tensor3 g(static_cast<size_t>(d), Mat(static_cast<size_t>(d), Vec(static_cast<size_t>(d))));
    for (int l = 0; l < d; ++l)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          auto at = [&](const FrameData& f) {
            return f.gamma[static_cast<size_t>(l)][static_cast<size_t>(j)][static_cast<size_t>(k)];
          };
          g[static_cast<size_t>(l)][static_cast<size_t>(j)][static_cast<size_t>(k)] =
              (-at(fp2) + 8.0 * at(fp1) - 8.0 * at(fm1) + at(fm2)) / (12.0 * h);
        }
    dgamma[static_cast<size_t>(i)] = std::move(g);
  }

  Tensor4 riemann(static_cast<size_t>(d),
                  Tensor3(static_cast<size_t>(d),
                          Mat(static_cast<size_t>(d), Vec(static_cast<size_t>(d), 0.0))));
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double r = dgamma[static_cast<size_t>(i)][static_cast<size_t>(l)][static_cast<size_t>(j)]
                           [static_cast<size_t>(k)] -
                     dgamma[static_cast<size_t>(j)][static_cast<size_t>(l)][static_cast<size_t>(i)]
                           [static_cast<size_t>(k)];
          for (int m = 0; m < d; ++m)
            r += f0.gamma[static_cast<size_t>(l)][static_cast<size_t>(i)][static_cast<size_t>(m)] *
                     f0.gamma[static_cast<size_t>(m)][static_cast<size_t>(j)][static_cast<size_t>(k)] -
                 f0.gamma[static_cast<size_t>(l)][static_cast<size_t>(j)][static_cast<size_t>(m)] *
                     f0.gamma[static_cast<size_t>(m)][static_cast<size_t>(i)][static_cast<size_t>(k)];
          riemann[static_cast<size_t>(l)][static_cast<size_t>(i)][static_cast<size_t>(j)]
                 [static_cast<size_t>(k)] = r;
        }
  return riemann;
}

}  // namespace

CurvatureData curvature_at(const Chart& chart, const Vec& u) {
  FrameData f0 = frames_at(chart, u);
  const int d = chart.d;
  CurvatureData c;
  c.riemann = riemann_tensor(chart, u, f0);

  if (d == 2) {
    // K = g_{1m} R^m_{122} / det g  with indices (i,j) = (1,2)
    double num = 0.0;
    for (int m = 0; m < 2; ++m)
      num += f0.g[0][static_cast<size_t>(m)] *
             c.riemann[static_cast<size_t>(m)][0][1][1];
    c.gauss = num / (f0.g[0][0] * f0.g[1][1] - f0.g[0][1] * f0.g[1][0]);
  }

  // first Bianchi (cyclic in the three lower slots), lowered
  double cyc = 0.0;
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          double r = c.riemann[static_cast<size_t>(l)][static_cast<size_t>(i)][static_cast<size_t>(j)]
                              [static_cast<size_t>(k)] +
                     c.riemann[static_cast<size_t>(l)][static_cast<size_t>(j)][static_cast<size_t>(k)]
                              [static_cast<size_t>(i)] +
                     c.riemann[static_cast<size_t>(l)][static_cast<size_t>(k)][static_cast<size_t>(i)]
                              [static_cast<size_t>(j)];
          cyc = std::max(cyc, std::fabs(r));
        }
  c.ricci_cyclic_residual = cyc;

  // second Bianchi: cyclic covariant derivative in (i, j, k); derivatives of
  // R by finite differences of the (smooth) Riemann evaluation
  double h2 = 1e-3;
  double bianchi = 0.0;
  if (d >= 2) {
    std::vector<Tensor4> dR(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
      Vec up = u, dn = u;
      up[static_cast<size_t>(i)] += h2;
      dn[static_cast<size_t>(i)] -= h2;
      int shrink = 0;
      while ((!chart.in_domain(up) || !chart.in_domain(dn)) && shrink < 6) {
        h2 /= 2.0;
        up[static_cast<size_t>(i)] = u[static_cast<size_t>(i)] + h2;
        dn[static_cast<size_t>(i)] = u[static_cast<size_t>(i)] - h2;
        ++shrink;
      }
      chart.require_in_domain(up);
      chart.require_in_domain(dn);
      Tensor4 rp = riemann_tensor(chart, up, frames_at(chart, up));
      Tensor4 rm = riemann_tensor(chart, dn, frames_at(chart, dn));
      Tensor4 t(static_cast<size_t>(d),
                Tensor3(static_cast<size_t>(d),
                        Mat(static_cast<size_t>(d), Vec(static_cast<size_t>(d), 0.0))));
      for (int l = 0; l < d; ++l)
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            for (int k = 0; k < d; ++k)
              t[static_cast<size_t>(l)][static_cast<size_t>(a)][static_cast<size_t>(b)]
               [static_cast<size_t>(k)] =
                  (rp[static_cast<size_t>(l)][static_cast<size_t>(a)][static_cast<size_t>(b)]
                     [static_cast<size_t>(k)] -
                   rm[static_cast<size_t>(l)][static_cast<size_t>(a)][static_cast<size_t>(b)]
                     [static_cast<size_t>(k)]) /
                  (2.0 * h2);
      dR[static_cast<size_t>(i)] = std::move(t);
    }
    auto nabla = [&](int i, int l, int a, int b, int k) {
      double r = dR[static_cast<size_t>(i)][static_cast<size_t>(l)][static_cast<size_t>(a)]
                   [static_cast<size_t>(b)][static_cast<size_t>(k)];
      for (int m = 0; m < d; ++m) {
        r += f0.gamma[static_cast<size_t>(l)][static_cast<size_t>(i)][static_cast<size_t>(m)] *
             c.riemann[static_cast<size_t>(m)][static_cast<size_t>(a)][static_cast<size_t>(b)]
                      [static_cast<size_t>(k)];
        r -= f0.gamma[static_cast<size_t>(m)][static_cast<size_t>(i)][static_cast<size_t>(a)] *
             c.riemann[static_cast<size_t>(l)][static_cast<size_t>(m)][static_cast<size_t>(b)]
                      [static_cast<size_t>(k)];
        r -= f0.gamma[static_cast<size_t>(m)][static_cast<size_t>(i)][static_cast<size_t>(b)] *
             c.riemann[static_cast<size_t>(l)][static_cast<size_t>(a)][static_cast<size_t>(m)]
                      [static_cast<size_t>(k)];
        r -= f0.gamma[static_cast<size_t>(m)][static_cast<size_t>(i)][static_cast<size_t>(k)] *
             c.riemann[static_cast<size_t>(l)][static_cast<size_t>(a)][static_cast<size_t>(b)]
                      [static_cast<size_t>(m)];
      }
      return r;
    };
    for (int l = 0; l < d; ++l)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k)
            for (int t = 0; t < d; ++t) {
              double r = nabla(i, l, j, k, t) + nabla(j, l, k, i, t) + nabla(k, l, i, j, t);
              bianchi = std::max(bianchi, std::fabs(r));
            }
  }
  c.bianchi_cyclic_residual = bianchi;
  return c;
}

RealMv curvature_bivector(const FrameData& f, const CurvatureData& c, int i, int j) {
  const int d = f.d;
  RealMv out(f.ambient);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      double x = 0.0;
      for (int t = 0; t < d; ++t)
        x += c.riemann[static_cast<size_t>(m)][static_cast<size_t>(i)][static_cast<size_t>(j)]
                      [static_cast<size_t>(t)] *
             f.ginv[static_cast<size_t>(t)][static_cast<size_t>(n)];
      if (x == 0.0) continue;
      out += wedge(f.xi[static_cast<size_t>(m)], f.xi[static_cast<size_t>(n)]).scaled(0.5 * x);
    }
  return out;
}

RealMv star_numeric(const RealMv& a, const RealMv& b, const Mat& contraction) {
  a.check_signature(b);
  const SignaturePtr& sig = a.signature() ? a.signature() : b.signature();
  RealMv out(sig);
  for (const auto& [ma, ca] : a.blades()) {
    for (const auto& [mb, cb] : b.blades()) {
      uint32_t s = ma;
      while (true) {
        int k = std::popcount(s);
        std::vector<int> rows = bits_of(s);
        uint32_t t = mb;
        while (true) {
          if (std::popcount(t) == k) {
            uint32_t rem_a = ma ^ s;
            uint32_t rem_b = mb ^ t;
            if (!(rem_a & rem_b)) {
              double det = det_sub(contraction, rows, bits_of(t));
              if (det != 0.0) {
                int parity = reorder_parity(rem_a, rem_b);
                int sgn = removal_sign_right(ma, s) * removal_sign_left(mb, t) *
                          ((parity & 1) ? -1 : 1);
                out.accumulate(rem_a | rem_b, ca * cb * det * sgn);
              }
            }
          }
          if (t == 0) break;
          t = (t - 1) & mb;
        }
        if (s == 0) break;
        s = (s - 1) & ma;
      }
    }
  }
  return out;
}

RealMv inner_numeric(const RealMv& a, const RealMv& b, const Mat& contraction) {
  int r = a.homogeneous_grade();
  int s = b.homogeneous_grade();
  if (r < 0 || s < 0) return RealMv(a.signature() ? a.signature() : b.signature());
  return star_numeric(a, b, contraction).grade_part(std::abs(r - s));
}

RealMv hodge_numeric(const RealMv& form, const Mat& ginv, double sqrt_det_g) {
  const SignaturePtr& sig = form.signature();
  const int d = sig->dim();
  const uint32_t full = (1u << d) - 1;
  RealMv out(sig);
  for (const auto& [mask, coeff] : form.blades()) {
    int r = std::popcount(mask);
    std::vector<int> urows = bits_of(mask);
    for (uint32_t w = 0; w <= full; ++w) {
      if (std::popcount(w) != d - r) continue;
      uint32_t jmask = full & ~w;
      double det = det_sub(ginv, urows, bits_of(jmask));
      if (det == 0.0) continue;
      if (reorder_parity(jmask, w) & 1) det = -det;
      out.accumulate(w, coeff * det * sqrt_det_g);
    }
  }
  return out;
}

}  // namespace gastar
