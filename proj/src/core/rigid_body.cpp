#include "core/rigid_body.hpp"

#include <cmath>
#include <sstream>

namespace gastar {

namespace {

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

const BivectorAlgebra& so3_cached() {
  static const BivectorAlgebra alg = so3_algebra();
  return alg;
}

}  // namespace

// (s + v.B)(s' + v'.B) = (ss' - v.v') + (s v' + s' v - v x v').B
Rotor3 rotor_mul(const Rotor3& a, const Rotor3& b) {
  Vec3 va = {a[1], a[2], a[3]};
  Vec3 vb = {b[1], b[2], b[3]};
  Vec3 vx = cross(va, vb);
  return {a[0] * b[0] - dot(va, vb), a[0] * b[1] + b[0] * a[1] - vx[0],
          a[0] * b[2] + b[0] * a[2] - vx[1], a[0] * b[3] + b[0] * a[3] - vx[2]};
}

Rotor3 rotor_rev(const Rotor3& a) { return {a[0], -a[1], -a[2], -a[3]}; }

double rotor_norm(const Rotor3& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
}

Vec3 rotor_sandwich(const Rotor3& r, const Vec3& bivector) {
  Rotor3 x = {0.0, bivector[0], bivector[1], bivector[2]};
  Rotor3 out = rotor_mul(rotor_mul(r, x), rotor_rev(r));
  return {out[1], out[2], out[3]};
}

InertiaOperator InertiaOperator::principal(double i1, double i2, double i3) {
  if (i1 <= 0.0 || i2 <= 0.0 || i3 <= 0.0)
    throw math_error("principal moments must be positive");
  InertiaOperator op;
  op.m_[0][0] = i1;
  op.m_[1][1] = i2;
  op.m_[2][2] = i3;
  op.finish();
  return op;
}

InertiaOperator InertiaOperator::from_point_masses(
    const std::vector<std::pair<double, Vec3>>& samples) {
  // components of I(B_j) on the B_i basis via ambient multivectors
  auto sig = euclidean_signature(3);
  const auto& alg = so3_cached();
  InertiaOperator op;
  for (int j = 0; j < 3; ++j) {
    RealMv acc(sig);
    for (const auto& [mass, x] : samples) {
      RealMv xv(sig);
      for (int a = 0; a < 3; ++a) xv.accumulate(1u << a, x[static_cast<size_t>(a)]);
      RealMv bj(sig);
      for (const auto& [mask, c] : alg.generators[static_cast<size_t>(j)].blades())
        bj.accumulate(mask, c.constant_value().re().to_double());
      RealMv xb = inner(xv, bj);
      acc += wedge(xv, xb).scaled(mass);
    }
    for (int i = 0; i < 3; ++i) {
      RealMv bi(sig);
      for (const auto& [mask, c] : alg.generators[static_cast<size_t>(i)].blades())
        bi.accumulate(mask, c.constant_value().re().to_double());
      // <rev(B_i) * acc>_0 with |B_i|^2 = 1
      op.m_[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          star(bi.reversed(), acc).scalar_part();
    }
  }
  op.finish();
  return op;
}

void InertiaOperator::finish() {
  // closed-form 3x3 inverse
  const Mat3& m = m_;
  double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (det == 0.0 || !std::isfinite(det)) throw math_error("inertia operator is singular");
  double inv = 1.0 / det;
  inv_[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) * inv;
  inv_[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * inv;
  inv_[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * inv;
  inv_[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) * inv;
  inv_[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * inv;
  inv_[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * inv;
  inv_[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) * inv;
  inv_[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * inv;
  inv_[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * inv;
}

Vec3 InertiaOperator::apply(const Vec3& w) const {
  Vec3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out[static_cast<size_t>(i)] += m_[static_cast<size_t>(i)][static_cast<size_t>(j)] * w[static_cast<size_t>(j)];
  return out;
}

Vec3 InertiaOperator::apply_inverse(const Vec3& l) const {
  Vec3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out[static_cast<size_t>(i)] += inv_[static_cast<size_t>(i)][static_cast<size_t>(j)] * l[static_cast<size_t>(j)];
  return out;
}

bool InertiaOperator::symmetric_on(const Vec3& a, const Vec3& b, double tol) const {
  // reverse(A) . I(B) = reverse(B) . I(A); reversal flips both signs, so the
  // component form is a . I(b) = b . I(a)
  return std::fabs(dot(a, apply(b)) - dot(b, apply(a))) <= tol;
}

bool InertiaOperator::positive_on(const Vec3& b) const {
  if (b[0] == 0.0 && b[1] == 0.0 && b[2] == 0.0) return true;
  return dot(b, apply(b)) > 0.0;
}

Vec3 euler_rhs(const Vec3& lb, const InertiaOperator& inertia) {
  return cross(lb, inertia.apply_inverse(lb));
}

Vec3 euler_rhs_lie_poisson(const Vec3& lb, const InertiaOperator& inertia) {
  // dL_i = {L_i, H}_LPB with {F,G} = C^k_ij theta_k dF_i dG_j and H = T(L)
  const auto& alg = so3_cached();
  Vec3 grad = inertia.apply_inverse(lb);  // dH/dL_j for quadratic kinetic energy
  Vec3 out{};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) {
      if (grad[j] == 0.0) continue;
      for (size_t k = 0; k < 3; ++k) {
        const Rational& c = alg.c(i, j, k);
        if (c.is_zero()) continue;
        out[i] += c.to_double() * lb[k] * grad[j];
      }
    }
  return out;
}

// Negative dt runs the flow backwards (used by the reversal check).
Trajectory integrate_free_body(const RigidState& start, const InertiaOperator& inertia, double dt,
                               int steps) {
  if (dt == 0.0 || !std::isfinite(dt)) throw math_error("time step must be nonzero");
  Trajectory traj;
  traj.dt = dt;
  traj.rows.reserve(static_cast<size_t>(steps) + 1);

  Vec3 l = start.lb;
  Rotor3 r = start.rotor;
  if (rotor_norm(r) == 0.0) r = {1.0, 0.0, 0.0, 0.0};

  auto energy = [&](const Vec3& lb) {
    Vec3 w = inertia.apply_inverse(lb);
    return 0.5 * dot(lb, w);
  };
  auto casimir = [&](const Vec3& lb) { return dot(lb, lb); };

  Vec3 spatial0 = rotor_sandwich(r, l);
  auto push_row = [&](double t) {
    Vec3 spatial = rotor_sandwich(r, l);
    double drift = 0.0;
    for (int a = 0; a < 3; ++a)
      drift = std::max(drift, std::fabs(spatial[static_cast<size_t>(a)] - spatial0[static_cast<size_t>(a)]));
    traj.rows.push_back({t, l, energy(l), casimir(l), r, drift});
  };

  auto deriv = [&](const Vec3& lb, const Rotor3& rot, Vec3& dl, Rotor3& dr) {
    dl = euler_rhs(lb, inertia);
    Vec3 w = inertia.apply_inverse(lb);
    Rotor3 wb = {0.0, w[0], w[1], w[2]};
    Rotor3 rw = rotor_mul(rot, wb);
    for (int a = 0; a < 4; ++a) dr[static_cast<size_t>(a)] = -0.5 * rw[static_cast<size_t>(a)];
  };

  push_row(start.t);
  double t = start.t;
  for (int step = 0; step < steps; ++step) {
    Vec3 k1l, k2l, k3l, k4l;
    Rotor3 k1r, k2r, k3r, k4r;
    deriv(l, r, k1l, k1r);
    Vec3 l2;
    Rotor3 r2;
    for (int a = 0; a < 3; ++a) l2[static_cast<size_t>(a)] = l[static_cast<size_t>(a)] + 0.5 * dt * k1l[static_cast<size_t>(a)];
    for (int a = 0; a < 4; ++a) r2[static_cast<size_t>(a)] = r[static_cast<size_t>(a)] + 0.5 * dt * k1r[static_cast<size_t>(a)];
    deriv(l2, r2, k2l, k2r);
    for (int a = 0; a < 3; ++a) l2[static_cast<size_t>(a)] = l[static_cast<size_t>(a)] + 0.5 * dt * k2l[static_cast<size_t>(a)];
    for (int a = 0; a < 4; ++a) r2[static_cast<size_t>(a)] = r[static_cast<size_t>(a)] + 0.5 * dt * k2r[static_cast<size_t>(a)];
    deriv(l2, r2, k3l, k3r);
    for (int a = 0; a < 3; ++a) l2[static_cast<size_t>(a)] = l[static_cast<size_t>(a)] + dt * k3l[static_cast<size_t>(a)];
    for (int a = 0; a < 4; ++a) r2[static_cast<size_t>(a)] = r[static_cast<size_t>(a)] + dt * k3r[static_cast<size_t>(a)];
    deriv(l2, r2, k4l, k4r);
    for (int a = 0; a < 3; ++a)
      l[static_cast<size_t>(a)] +=
          dt / 6.0 * (k1l[static_cast<size_t>(a)] + 2.0 * k2l[static_cast<size_t>(a)] +
                      2.0 * k3l[static_cast<size_t>(a)] + k4l[static_cast<size_t>(a)]);
    for (int a = 0; a < 4; ++a)
      r[static_cast<size_t>(a)] +=
          dt / 6.0 * (k1r[static_cast<size_t>(a)] + 2.0 * k2r[static_cast<size_t>(a)] +
                      2.0 * k3r[static_cast<size_t>(a)] + k4r[static_cast<size_t>(a)]);
    double n = rotor_norm(r);
    for (double v : l)
      if (!std::isfinite(v)) throw math_error("integration blew up at step " + std::to_string(step));
    if (!std::isfinite(n) || n == 0.0)
      throw math_error("integration blew up at step " + std::to_string(step));
    for (int a = 0; a < 4; ++a) r[static_cast<size_t>(a)] /= n;
    t = start.t + dt * (step + 1);
    push_row(t);
  }

  double e0 = traj.rows.front().energy;
  double c0 = traj.rows.front().casimir;
  for (const auto& row : traj.rows) {
    traj.energy_drift = std::max(traj.energy_drift, std::fabs(row.energy - e0));
    traj.casimir_drift = std::max(traj.casimir_drift, std::fabs(row.casimir - c0));
    traj.spatial_l_drift = std::max(traj.spatial_l_drift, row.spatial_l_drift);
  }
  return traj;
}

PoincareResidual poincare_residual(const Trajectory& traj, const InertiaOperator& inertia) {
  PoincareResidual out;
  const auto& rows = traj.rows;
  if (rows.size() < 5) return out;
  double dt = traj.dt;
  std::vector<Vec3> iw(rows.size());
  std::vector<Vec3> w(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    w[i] = inertia.apply_inverse(rows[i].lb);
    iw[i] = rows[i].lb;  // I(W) = L
  }
  for (size_t i = 2; i + 2 < rows.size(); ++i) {
    Vec3 diw{};
    for (int a = 0; a < 3; ++a)
      diw[static_cast<size_t>(a)] =
          (-iw[i + 2][static_cast<size_t>(a)] + 8.0 * iw[i + 1][static_cast<size_t>(a)] -
           8.0 * iw[i - 1][static_cast<size_t>(a)] + iw[i - 2][static_cast<size_t>(a)]) /
          (12.0 * dt);
    // component form of W x I(W): the bivector commutator maps to the
    // negated vector cross product
    Vec3 rhs = cross(iw[i], w[i]);
    double res = 0.0;
    for (int a = 0; a < 3; ++a)
      res = std::max(res, std::fabs(diw[static_cast<size_t>(a)] - rhs[static_cast<size_t>(a)]));
    out.series.push_back(res);
    out.max = std::max(out.max, res);
  }
  return out;
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream out;
  out.precision(17);
  out << "t,LB1,LB2,LB3,energy,casimir,R0,R1,R2,R3,spatial_L_drift\n";
  for (const auto& r : traj.rows) {
    out << r.t << "," << r.lb[0] << "," << r.lb[1] << "," << r.lb[2] << "," << r.energy << ","
        << r.casimir << "," << r.rotor[0] << "," << r.rotor[1] << "," << r.rotor[2] << ","
        << r.rotor[3] << "," << r.spatial_l_drift << "\n";
  }
  return out.str();
}

}  // namespace gastar
