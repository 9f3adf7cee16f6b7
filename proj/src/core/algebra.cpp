#include "core/algebra.hpp"

namespace gastar {

namespace {


Rational real_constant(const PolyScalar& p, const char* what) {
  CRational v = p.constant_value();
  if (!v.is_real()) throw math_error(std::string(what) + " is not real");
  return v.re();
}

RealMv to_real(const PolyMv& m) {
  RealMv out(m.signature());
  for (const auto& [mask, c] : m.blades()) {
    CRational v = c.constant_value();
    if (!v.is_real()) throw math_error("multivector has complex coefficients");
    out.accumulate(mask, v.re().to_double());
  }
  return out;
}

}  // namespace

BivectorAlgebra algebra_from_generators(const std::string& name, const SignaturePtr& sig,
                                        std::vector<PolyMv> generators,
                                        std::vector<std::string> labels) {
  BivectorAlgebra a;
  a.name = name;
  a.sig = sig;
  a.generators = std::move(generators);
  a.labels = std::move(labels);
  const size_t m = a.generators.size();
  if (a.labels.size() != m) throw math_error("generator labels do not match");

  std::map<uint32_t, size_t> row_of;
  for (const auto& g : a.generators) {
    if (!g.is_zero() && g.homogeneous_grade() != 2)
      throw math_error("generators must be bivectors");
    for (const auto& [mask, c] : g.blades()) row_of.emplace(mask, row_of.size());
  }
  std::vector<std::vector<Rational>> cols(m, std::vector<Rational>(row_of.size()));
  auto fill = [&](const PolyMv& g, std::vector<Rational>& col) -> bool {
    std::fill(col.begin(), col.end(), Rational(0));
    for (const auto& [mask, c] : g.blades()) {
      auto it = row_of.find(mask);
      if (it == row_of.end()) return false;
      col[it->second] = real_constant(c, "generator coefficient");
    }
    return true;
  };
  for (size_t k = 0; k < m; ++k) fill(a.generators[k], cols[k]);

  a.structure.assign(m, std::vector<std::vector<Rational>>(m, std::vector<Rational>(m)));
  std::vector<Rational> rhs(row_of.size());
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      PolyMv prod = commutator(a.generators[i], a.generators[j]);
      std::vector<Rational> x;
      if (!fill(prod, rhs) || !solve_exact(cols, rhs, x))
        throw math_error("algebra " + name + " is not closed: [" + a.labels[i] + "," +
                         a.labels[j] + "] escapes the span");
      for (size_t k = 0; k < m; ++k) a.structure[i][j][k] = x[k];
    }
  }

  a.killing.assign(m, std::vector<Rational>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j)
      a.killing[i][j] =
          real_constant(inner(a.generators[i], a.generators[j]).scalar_part(), "killing entry");
  return a;
}

bool structure_antisymmetric_ok(const BivectorAlgebra& a) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j)
      for (size_t k = 0; k < a.size(); ++k)
        if (a.c(i, j, k) != -a.c(j, i, k)) return false;
  return true;
}

bool structure_jacobi_ok(const BivectorAlgebra& a) {
  const size_t m = a.size();
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      for (size_t k = 0; k < m; ++k) {
        for (size_t l = 0; l < m; ++l) {
          Rational acc(0);
          for (size_t w = 0; w < m; ++w) {
            acc += a.c(i, j, w) * a.c(w, k, l);
            acc += a.c(j, k, w) * a.c(w, i, l);
            acc += a.c(k, i, w) * a.c(w, j, l);
          }
          if (!acc.is_zero()) return false;
        }
      }
    }
  }
  return true;
}

BivectorAlgebra so3_algebra() {
  auto sig = euclidean_signature(3);
  auto e = [&](int i) { return PolyMv::basis_vector(sig, i); };
  std::vector<PolyMv> gens = {wedge(e(1), e(2)), wedge(e(2), e(0)), wedge(e(0), e(1))};
  return algebra_from_generators("so3", sig, std::move(gens), {"B1", "B2", "B3"});
}

BivectorAlgebra lorentz_algebra(bool timelike_minus) {
  auto sig = minkowski_signature(4, timelike_minus);
  auto gamma = [&](int mu) { return PolyMv::basis_vector(sig, mu); };
  PolyMv i4 = pseudoscalar<PolyScalar>(sig);
  auto sigma = [&](int mu, int nu) {
    PolyMv comm = star(gamma(mu), gamma(nu)) - star(gamma(nu), gamma(mu));
    return star(i4, comm).scaled(Rational(1, 2));
  };
  std::vector<PolyMv> gens;
  std::vector<std::string> labels;
  // L_i = (1/2) sum_{j<k} eps_ijk sigma_jk ; K_i = (1/2) sigma_0i
  int eps[3][2] = {{2, 3}, {3, 1}, {1, 2}};
  for (int i = 0; i < 3; ++i) {
    gens.push_back(sigma(eps[i][0], eps[i][1]).scaled(Rational(1, 2)));
    labels.push_back("L" + std::to_string(i + 1));
  }
  for (int i = 1; i <= 3; ++i) {
    gens.push_back(sigma(0, i).scaled(Rational(1, 2)));
    labels.push_back("K" + std::to_string(i));
  }
  return algebra_from_generators(timelike_minus ? "lorentz-nonstd" : "lorentz-std", sig,
                                 std::move(gens), std::move(labels));
}

BivectorAlgebra unitary_algebra(int n) {
  auto sig = euclidean_signature(2 * n);
  auto alpha = [&](int i) { return PolyMv::basis_vector(sig, i); };
  auto beta = [&](int i) { return PolyMv::basis_vector(sig, n + i); };
  std::vector<PolyMv> gens;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      gens.push_back(wedge(alpha(i), alpha(j)) + wedge(beta(i), beta(j)));
      labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      gens.push_back(wedge(alpha(i), beta(j)) - wedge(beta(i), alpha(j)));
      labels.push_back("F" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  }
  for (int i = 0; i < n; ++i) {
    gens.push_back(wedge(alpha(i), beta(i)));
    labels.push_back("J" + std::to_string(i + 1));
  }
  return algebra_from_generators("u" + std::to_string(n), sig, std::move(gens), std::move(labels));
}

BivectorAlgebra gl_algebra(int n) {
  std::vector<std::vector<Rational>> m(static_cast<size_t>(2 * n),
                                       std::vector<Rational>(static_cast<size_t>(2 * n)));
  for (int i = 0; i < n; ++i) {
    m[static_cast<size_t>(i)][static_cast<size_t>(i)] = Rational(1);
    m[static_cast<size_t>(n + i)][static_cast<size_t>(n + i)] = Rational(-1);
  }
  auto sig = signature_from_matrix("split" + std::to_string(2 * n), SignatureKind::symmetric,
                                   std::move(m));
  auto alpha = [&](int i) { return PolyMv::basis_vector(sig, i); };
  auto beta = [&](int i) { return PolyMv::basis_vector(sig, n + i); };
  std::vector<PolyMv> gens;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      gens.push_back(wedge(alpha(i), alpha(j)) - wedge(beta(i), beta(j)));
      labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      gens.push_back(wedge(alpha(i), beta(j)) - wedge(beta(i), alpha(j)));
      labels.push_back("F" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  }
  for (int i = 0; i < n; ++i) {
    gens.push_back(wedge(alpha(i), beta(i)));
    labels.push_back("K" + std::to_string(i + 1));
  }
  return algebra_from_generators("gl" + std::to_string(n), sig, std::move(gens), std::move(labels));
}

PolyMv unitary_j(const BivectorAlgebra& un) {
  PolyMv j(un.sig);
  int n = un.sig->dim() / 2;
  for (int i = 0; i < n; ++i)
    j += wedge(PolyMv::basis_vector(un.sig, i), PolyMv::basis_vector(un.sig, n + i));
  return j;
}

UnitaryInvarianceReport unitary_invariance_check(const BivectorAlgebra& un,
                                                 const std::vector<double>& rotor_parameters) {
  UnitaryInvarianceReport rep;
  PolyMv j = unitary_j(un);
  rep.commutators_vanish = true;
  for (const auto& g : un.generators)
    if (!commutator(g, j).is_zero()) rep.commutators_vanish = false;

  RealMv jd = to_real(j);
  for (const auto& g : un.generators) {
    RealMv gd = to_real(g);
    for (double t : rotor_parameters) {
      RealMv r = rotor_exp(gd, 2.0 * t);  // rotor exp(t B)
      RealMv moved = apply_rotor(r, jd);
      rep.rotor_residual = std::max(rep.rotor_residual, (moved - jd).max_abs());
    }
  }
  return rep;
}

RealMv adjoint(const RealMv& rotor, const RealMv& b) { return apply_rotor(rotor, b); }

RealMv coadjoint(const RealMv& rotor, const RealMv& theta) {
  return apply_rotor_passive(rotor, theta);
}

double pairing(const RealMv& b, const RealMv& theta) {
  return star(b.reversed(), theta).scalar_part();
}

PolyScalar pairing(const PolyMv& b, const PolyMv& theta) {
  return star(b.reversed(), theta).scalar_part();
}

PolyField induced_field(const PolyMv& bivector, const RegistryPtr& reg,
                        const std::vector<std::string>& coord_names) {
  const SignaturePtr& sig = bivector.signature();
  if (static_cast<int>(coord_names.size()) != sig->dim())
    throw math_error("coordinate names do not match signature dimension");
  PolyMv x(sig);
  for (int i = 0; i < sig->dim(); ++i)
    x += PolyMv::basis_vector(sig, i).scaled(PolyScalar::variable(reg, coord_names[static_cast<size_t>(i)]));
  PolyMv bx = inner(bivector, x);
  PolyField out;
  out.reg = reg;
  for (int i = 0; i < sig->dim(); ++i) out.components.push_back(bx.coeff(1u << i));
  return out;
}

PolyField field_jacobi_lie(const PolyField& a, const PolyField& b,
                           const std::vector<std::string>& coord_names) {
  if (a.components.size() != b.components.size())
    throw math_error("field dimension mismatch");
  PolyField out;
  out.reg = a.reg;
  const size_t d = a.components.size();
  for (size_t i = 0; i < d; ++i) {
    PolyScalar acc;
    for (size_t j = 0; j < d; ++j) {
      acc += a.components[j] * b.components[i].diff(coord_names[j]);
      acc -= b.components[j] * a.components[i].diff(coord_names[j]);
    }
    out.components.push_back(acc);
  }
  return out;
}

PolyScalar lie_poisson_bracket(const PolyScalar& f, const PolyScalar& g,
                               const BivectorAlgebra& a, const RegistryPtr& reg,
                               const std::vector<std::string>& dual_names) {
  const size_t m = a.size();
  if (dual_names.size() != m) throw math_error("dual coordinate names do not match algebra");
  PolyScalar out;
  for (size_t i = 0; i < m; ++i) {
    PolyScalar df = f.diff(dual_names[i]);
    if (df.is_zero()) continue;
    for (size_t j = 0; j < m; ++j) {
      PolyScalar dg = g.diff(dual_names[j]);
      if (dg.is_zero()) continue;
      for (size_t k = 0; k < m; ++k) {
        const Rational& c = a.c(i, j, k);
        if (c.is_zero()) continue;
        out += (df * dg * PolyScalar::variable(reg, dual_names[k])).scaled(CRational(c));
      }
    }
  }
  return out;
}

}  // namespace gastar
