#include "core/moyal.hpp"

#include <cmath>

namespace gastar {

PhaseSpace PhaseSpace::darboux(int dof) {
  if (dof < 1) throw math_error("phase space needs at least one degree of freedom");
  PhaseSpace ps;
  ps.dof_ = dof;
  for (int m = 1; m <= dof; ++m) ps.vars_.push_back("q" + std::to_string(m));
  for (int m = 1; m <= dof; ++m) ps.vars_.push_back("p" + std::to_string(m));
  std::vector<std::string> names = ps.vars_;
  names.push_back(ps.hbar_);
  ps.reg_ = make_registry(names);
  int n = 2 * dof;
  ps.j_.assign(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
  for (int m = 0; m < dof; ++m) {
    ps.j_[static_cast<size_t>(m)][static_cast<size_t>(dof + m)] = Rational(1);
    ps.j_[static_cast<size_t>(dof + m)][static_cast<size_t>(m)] = Rational(-1);
  }
  return ps;
}

PhaseSpace PhaseSpace::with_metric(const std::vector<std::vector<Rational>>& eta,
                                   const std::string& coord_prefix,
                                   const std::string& momentum_prefix) {
  int d = static_cast<int>(eta.size());
  PhaseSpace ps;
  ps.dof_ = d;
  for (int m = 0; m < d; ++m) ps.vars_.push_back(coord_prefix + std::to_string(m));
  for (int m = 0; m < d; ++m) ps.vars_.push_back(momentum_prefix + std::to_string(m));
  std::vector<std::string> names = ps.vars_;
  names.push_back(ps.hbar_);
  ps.reg_ = make_registry(names);
  int n = 2 * d;
  ps.j_.assign(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      if (eta[static_cast<size_t>(a)][static_cast<size_t>(b)] !=
          eta[static_cast<size_t>(b)][static_cast<size_t>(a)])
        throw math_error("metric block must be symmetric");
      ps.j_[static_cast<size_t>(a)][static_cast<size_t>(d + b)] =
          eta[static_cast<size_t>(a)][static_cast<size_t>(b)];
      ps.j_[static_cast<size_t>(d + a)][static_cast<size_t>(b)] =
          -eta[static_cast<size_t>(a)][static_cast<size_t>(b)];
    }
  }
  return ps;
}

void PhaseSpace::require_scope(const PolyScalar& f) const {
  if (f.registry() && f.registry() != reg_)
    throw math_error("polynomial does not live on this phase space");
}

PolyScalar moyal_star(const PolyScalar& f, const PolyScalar& g, const PhaseSpace& ps) {
  ps.require_scope(f);
  ps.require_scope(g);
  const int n = ps.dim();
  std::vector<int> var_index(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) var_index[static_cast<size_t>(a)] = ps.registry()->require(ps.var_name(a));

  PolyScalar result = f * g;
  PolyScalar hbar = ps.hbar();

  std::vector<std::pair<PolyScalar, PolyScalar>> pairs{{f, g}};
  CRational half_i(Rational(0), Rational(1, 2));  // i/2
  CRational order_factor(1);
  PolyScalar hbar_power = ps.constant(CRational(1));

  for (int k = 1; !pairs.empty(); ++k) {
    std::vector<std::pair<PolyScalar, PolyScalar>> next;
    for (const auto& [a, b] : pairs) {
      for (int x = 0; x < n; ++x) {
        PolyScalar da = a.diff(var_index[static_cast<size_t>(x)]);
        if (da.is_zero()) continue;
        for (int y = 0; y < n; ++y) {
          const Rational& j = ps.coupling(x, y);
          if (j.is_zero()) continue;
          PolyScalar db = b.diff(var_index[static_cast<size_t>(y)]);
          if (db.is_zero()) continue;
          next.emplace_back(da.scaled(CRational(j)), db);
        }
      }
    }
    pairs = std::move(next);
    if (pairs.empty()) break;
    order_factor = order_factor * half_i / CRational(Rational(k));
    hbar_power *= hbar;
    PolyScalar term;
    for (const auto& [a, b] : pairs) term += a * b;
    result += term.scaled(order_factor) * hbar_power;
  }
  return result;
}

PolyScalar moyal_commutator(const PolyScalar& f, const PolyScalar& g, const PhaseSpace& ps) {
  return moyal_star(f, g, ps) - moyal_star(g, f, ps);
}

PolyScalar poisson_bracket(const PolyScalar& f, const PolyScalar& g, const PhaseSpace& ps) {
  ps.require_scope(f);
  ps.require_scope(g);
  const int n = ps.dim();
  PolyScalar out;
  for (int a = 0; a < n; ++a) {
    PolyScalar da = f.diff(ps.var_name(a));
    if (da.is_zero()) continue;
    for (int b = 0; b < n; ++b) {
      const Rational& j = ps.coupling(a, b);
      if (j.is_zero()) continue;
      PolyScalar db = g.diff(ps.var_name(b));
      if (db.is_zero()) continue;
      out += (da * db).scaled(CRational(j));
    }
  }
  return out;
}

PolyScalar classical_limit(const PolyScalar& f, const PhaseSpace& ps) {
  if (f.is_zero()) return f;
  PolyScalar divided = f.divide_by_monomial(CRational::i(), ps.hbar_name(), 1);
  return divided.substitute(ps.hbar_name(), Rational(0));
}

std::vector<std::vector<double>> matrix_exp(std::vector<std::vector<double>> m) {
  const size_t n = m.size();
  double norm = 0.0;
  for (const auto& row : m) {
    double s = 0.0;
    for (double v : row) s += std::fabs(v);
    norm = std::max(norm, s);
  }
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  double scale = std::ldexp(1.0, -squarings);
  for (auto& row : m)
    for (double& v : row) v *= scale;

  auto mul = [n](const std::vector<std::vector<double>>& a,
                 const std::vector<std::vector<double>>& b) {
    std::vector<std::vector<double>> c(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < n; ++k) {
        double aik = a[i][k];
        if (aik == 0.0) continue;
        for (size_t j = 0; j < n; ++j) c[i][j] += aik * b[k][j];
      }
    return c;
  };

  std::vector<std::vector<double>> result(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) result[i][i] = 1.0;
  std::vector<std::vector<double>> term = result;
  for (int k = 1; k <= 40; ++k) {
    term = mul(term, m);
    double tmax = 0.0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        term[i][j] /= static_cast<double>(k);
        result[i][j] += term[i][j];
        tmax = std::max(tmax, std::fabs(term[i][j]));
      }
    if (tmax < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = mul(result, result);
  return result;
}

LinearFlow hamiltonian_flow_quadratic(const PolyScalar& h, double t, const PhaseSpace& ps) {
  ps.require_scope(h);
  const int n = ps.dim();
  int hbar_index = ps.registry()->require(ps.hbar_name());
  for (const auto& [e, c] : h.terms()) {
    int deg = 0;
    for (uint32_t x : e) deg += static_cast<int>(x);
    if (deg != 2 || (static_cast<size_t>(hbar_index) < e.size() && e[static_cast<size_t>(hbar_index)] != 0))
      throw math_error("flow needs a strictly quadratic Hamiltonian");
  }
  // constant Hessian
  std::vector<std::vector<double>> hess(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      PolyScalar d2 = h.diff(ps.var_name(a)).diff(ps.var_name(b));
      CRational v = d2.constant_value();
      if (!v.is_real()) throw math_error("Hamiltonian must be real");
      hess[static_cast<size_t>(a)][static_cast<size_t>(b)] = v.re().to_double();
    }
  }
  std::vector<std::vector<double>> m(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n), 0.0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double acc = 0.0;
      for (int c = 0; c < n; ++c)
        acc += ps.coupling(a, c).to_double() * hess[static_cast<size_t>(c)][static_cast<size_t>(b)];
      m[static_cast<size_t>(a)][static_cast<size_t>(b)] = acc * t;
    }
  LinearFlow flow;
  for (int a = 0; a < n; ++a) flow.vars.push_back(ps.var_name(a));
  flow.matrix = matrix_exp(std::move(m));
  return flow;
}

QuadraticGenerators gl_bosonic_generators(int n, const PhaseSpace& ps) {
  if (ps.dof() < n) throw math_error("phase space has too few degrees of freedom");
  QuadraticGenerators out;
  auto q = [&](int i) { return ps.var("q" + std::to_string(i + 1)); };
  auto p = [&](int i) { return ps.var("p" + std::to_string(i + 1)); };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out.elements.push_back(q(i) * p(j) + q(j) * p(i));
      out.labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      out.elements.push_back(q(i) * p(j) - q(j) * p(i));
      out.labels.push_back("F" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  }
  for (int i = 0; i < n; ++i) {
    out.elements.push_back(q(i) * p(i));
    out.labels.push_back("K" + std::to_string(i + 1));
  }
  return out;
}

void require_moyal_closure(const QuadraticGenerators& gens, const PhaseSpace& ps) {
  const size_t m = gens.elements.size();
  // span columns over the union of monomials
  std::map<PolyScalar::Expo, size_t> row_of;
  for (const auto& g : gens.elements)
    for (const auto& [e, c] : g.terms())
      row_of.emplace(e, row_of.size());
  std::vector<std::vector<Rational>> cols(m, std::vector<Rational>(row_of.size()));
  auto fill = [&](const PolyScalar& g, std::vector<Rational>& col) -> bool {
    std::fill(col.begin(), col.end(), Rational(0));
    for (const auto& [e, c] : g.terms()) {
      auto it = row_of.find(e);
      if (it == row_of.end()) return false;
      if (!c.is_real()) return false;
      col[it->second] = c.re();
    }
    return true;
  };
  for (size_t k = 0; k < m; ++k)
    if (!fill(gens.elements[k], cols[k])) throw math_error("generator has complex coefficients");

  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      PolyScalar comm = classical_limit(moyal_commutator(gens.elements[i], gens.elements[j], ps), ps);
      std::vector<Rational> x;
      std::vector<Rational> tmp(row_of.size());
      if (!fill(comm, tmp) || !solve_exact(cols, tmp, x))
        throw math_error("Moyal commutator [" + gens.labels[i] + "," + gens.labels[j] +
                         "] escapes the generator span");
    }
  }
}

}  // namespace gastar
