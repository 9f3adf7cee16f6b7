#include "core/extended.hpp"

namespace gastar {

ExtendedPhaseSpace::ExtendedPhaseSpace(int dof, bool include_hbar)
    : dof_(dof), include_hbar_(include_hbar) {
  if (dof < 1) throw math_error("extended phase space needs at least one degree of freedom");
  int nn = 2 * dof;
  for (int m = 1; m <= dof; ++m) z_names_.push_back("q" + std::to_string(m));
  for (int m = 1; m <= dof; ++m) z_names_.push_back("p" + std::to_string(m));
  for (int a = 1; a <= nn; ++a) y_names_.push_back("y" + std::to_string(a));
  std::vector<std::string> names = z_names_;
  names.insert(names.end(), y_names_.begin(), y_names_.end());
  names.push_back("hbar");
  reg_ = make_registry(names);

  int fdim = 2 * nn;
  std::vector<std::vector<Rational>> m(static_cast<size_t>(fdim),
                                       std::vector<Rational>(static_cast<size_t>(fdim)));
  for (int k = 0; k < nn; ++k) {
    m[static_cast<size_t>(k)][static_cast<size_t>(nn + k)] = Rational(1, 2);
    m[static_cast<size_t>(nn + k)][static_cast<size_t>(k)] = Rational(1, 2);
  }
  fsig_ = signature_from_matrix("ghost" + std::to_string(fdim), SignatureKind::symmetric,
                                std::move(m));
}

Rational ExtendedPhaseSpace::coupling(int a, int b) const {
  int d = dof_;
  if (a < d && b == a + d) return Rational(1);
  if (b < d && a == b + d) return Rational(-1);
  return Rational(0);
}

void ExtendedPhaseSpace::require_scope(const PolyMv& f) const {
  if (f.signature() && !f.signature()->same_as(*fsig_))
    throw math_error("multivector does not live on this extended phase space");
  for (const auto& [mask, c] : f.blades())
    if (c.registry() && c.registry() != reg_)
      throw math_error("coefficients do not live on this extended phase space");
}

PolyMv mv_diff(const PolyMv& m, const std::string& var) {
  PolyMv out(m.signature());
  for (const auto& [mask, c] : m.blades()) {
    if (!c.registry()) continue;
    out.accumulate(mask, c.diff(var));
  }
  return out;
}

PolyMv mv_substitute(const PolyMv& m, const std::string& var, const Rational& value) {
  PolyMv out(m.signature());
  for (const auto& [mask, c] : m.blades()) out.accumulate(mask, c.substitute(var, value));
  return out;
}

PolyMv extended_star(const PolyMv& f, const PolyMv& g, const ExtendedPhaseSpace& eps) {
  eps.require_scope(f);
  eps.require_scope(g);
  PolyScalar hbar = PolyScalar::variable(eps.registry(), "hbar");

  // with hbar enabled, every contraction order (bosonic and fermionic alike)
  // carries one power of hbar
  auto fermionic = [&](const PolyMv& a, const PolyMv& b) {
    if (!eps.with_hbar()) return star(a, b);
    std::vector<PolyMv> orders = star_by_order(a, b);
    PolyMv acc(eps.fermionic_signature());
    PolyScalar power = eps.constant(CRational(1));
    for (size_t k = 0; k < orders.size(); ++k) {
      for (const auto& [mask, c] : orders[k].blades()) acc.accumulate(mask, c * power);
      power *= hbar;
    }
    return acc;
  };

  PolyMv result = fermionic(f, g);

  std::vector<std::pair<PolyMv, PolyMv>> pairs{{f, g}};
  CRational half_i(Rational(0), Rational(1, 2));
  CRational order_factor(1);
  PolyScalar hbar_power = eps.constant(CRational(1));

  const int nn = eps.n();
  for (int k = 1; !pairs.empty(); ++k) {
    std::vector<std::pair<PolyMv, PolyMv>> next;
    for (const auto& [a, b] : pairs) {
      for (int m = 0; m < nn; ++m) {
        PolyMv dza = mv_diff(a, eps.z_name(m));
        if (!dza.is_zero()) {
          PolyMv dyb = mv_diff(b, eps.y_name(m));
          if (!dyb.is_zero()) next.emplace_back(std::move(dza), std::move(dyb));
        }
        PolyMv dya = mv_diff(a, eps.y_name(m));
        if (!dya.is_zero()) {
          PolyMv dzb = mv_diff(b, eps.z_name(m));
          if (!dzb.is_zero()) next.emplace_back(-dya, std::move(dzb));
        }
      }
    }
    pairs = std::move(next);
    if (pairs.empty()) break;
    order_factor = order_factor * half_i / CRational(Rational(k));
    if (eps.with_hbar()) hbar_power *= hbar;
    for (const auto& [a, b] : pairs) {
      PolyMv term = fermionic(a, b);
      for (const auto& [mask, c] : term.blades())
        result.accumulate(mask, c.scaled(order_factor) * hbar_power);
    }
  }
  return result;
}

PolyMv extended_bracket(const PolyMv& f, const PolyMv& g, const ExtendedPhaseSpace& eps) {
  int pf = 0, pg = 0;
  if (!f.has_definite_parity(pf) || !g.has_definite_parity(pg))
    throw math_error("extended bracket needs definite Grassmann parity");
  PolyMv fg = extended_star(f, g, eps);
  PolyMv gf = extended_star(g, f, eps);
  PolyMv num = (pf * pg) & 1 ? fg + gf : fg - gf;

  CRational inv_i = CRational(1) / CRational::i();
  PolyMv out(num.signature());
  for (const auto& [mask, c] : num.blades()) {
    if (eps.with_hbar()) {
      PolyScalar divided = c.divide_by_monomial(CRational::i(), "hbar", 1);
      out.accumulate(mask, divided.substitute("hbar", Rational(0)));
    } else {
      out.accumulate(mask, c.scaled(inv_i));
    }
  }
  return out;
}

PolyMv extended_hamiltonian(const PolyScalar& h, const ExtendedPhaseSpace& eps) {
  const int nn = eps.n();
  PolyMv out(eps.fermionic_signature());
  for (int i = 0; i < nn; ++i) {
    for (int j = 0; j < nn; ++j) {
      Rational jij = eps.coupling(i, j);
      if (jij.is_zero()) continue;
      out.accumulate(0, (eps.y(i) * h.diff(eps.z_name(j))).scaled(CRational(jij)));
    }
  }
  for (int j = 0; j < nn; ++j) {
    for (int k = 0; k < nn; ++k) {
      Rational jjk = eps.coupling(j, k);
      if (jjk.is_zero()) continue;
      for (int l = 0; l < nn; ++l) {
        PolyScalar h_kl = h.diff(eps.z_name(k)).diff(eps.z_name(l));
        if (h_kl.is_zero()) continue;
        PolyMv blade = wedge(eps.zeta(j), eps.lambda(l));
        CRational factor = CRational::i() * CRational(jjk);
        for (const auto& [mask, c] : blade.blades())
          out.accumulate(mask, (c * h_kl).scaled(factor));
      }
    }
  }
  return out;
}

ExtendedEom extended_equations_of_motion(const PolyMv& h_ext, const ExtendedPhaseSpace& eps) {
  ExtendedEom eom;
  const int nn = eps.n();
  for (int a = 0; a < nn; ++a) {
    eom.z_dot.push_back(extended_bracket(eps.scalar(eps.z(a)), h_ext, eps));
    eom.y_dot.push_back(extended_bracket(eps.scalar(eps.y(a)), h_ext, eps));
    eom.zeta_dot.push_back(extended_bracket(eps.zeta(a), h_ext, eps));
    eom.lambda_dot.push_back(extended_bracket(eps.lambda(a), h_ext, eps));
  }
  return eom;
}

ExtendedEom expected_equations_of_motion(const PolyScalar& h, const ExtendedPhaseSpace& eps) {
  ExtendedEom eom;
  const int nn = eps.n();
  for (int i = 0; i < nn; ++i) {
    PolyMv zd(eps.fermionic_signature());
    PolyMv yd(eps.fermionic_signature());
    PolyMv zetad(eps.fermionic_signature());
    PolyMv lambdad(eps.fermionic_signature());

    // z^i' = J^{ij} d_j H ; lambda^i' = J^{ij} H_{jk} lambda^k
    for (int j = 0; j < nn; ++j) {
      Rational jij = eps.coupling(i, j);
      if (jij.is_zero()) continue;
      zd.accumulate(0, h.diff(eps.z_name(j)).scaled(CRational(jij)));
      for (int k = 0; k < nn; ++k) {
        PolyScalar h_jk = h.diff(eps.z_name(j)).diff(eps.z_name(k));
        if (!h_jk.is_zero()) lambdad += eps.lambda(k).scaled(h_jk.scaled(CRational(jij)));
      }
    }

    // zeta_i' = -J^{jk} H_{ki} zeta_j
    // y_i'    = -y_j J^{jk} H_{ki} - i zeta_j J^{jk} H_{kli} lambda^l
    for (int j = 0; j < nn; ++j) {
      for (int k = 0; k < nn; ++k) {
        Rational jjk = eps.coupling(j, k);
        if (jjk.is_zero()) continue;
        PolyScalar h_ki = h.diff(eps.z_name(k)).diff(eps.z_name(i));
        if (!h_ki.is_zero()) {
          zetad += eps.zeta(j).scaled(h_ki.scaled(CRational(-jjk)));
          yd.accumulate(0, (eps.y(j) * h_ki).scaled(CRational(-jjk)));
        }
        for (int l = 0; l < nn; ++l) {
          PolyScalar h_kli = h.diff(eps.z_name(k)).diff(eps.z_name(l)).diff(eps.z_name(i));
          if (h_kli.is_zero()) continue;
          PolyMv blade = wedge(eps.zeta(j), eps.lambda(l));
          CRational factor = CRational(Rational(0), Rational(-1)) * CRational(jjk);
          for (const auto& [mask, c] : blade.blades())
            yd.accumulate(mask, (c * h_kli).scaled(factor));
        }
      }
    }
    eom.z_dot.push_back(std::move(zd));
    eom.y_dot.push_back(std::move(yd));
    eom.zeta_dot.push_back(std::move(zetad));
    eom.lambda_dot.push_back(std::move(lambdad));
  }
  return eom;
}

PolyMv passive_hamiltonian_from(const PolyScalar& h, const ExtendedPhaseSpace& eps) {
  return extended_hamiltonian(h, eps).grade_part(2);
}

PassiveCheck passive_hamiltonian_check(const PolyScalar& h, const PolyMv& h_passive,
                                       const ExtendedPhaseSpace& eps) {
  PassiveCheck out;
  const int nn = eps.n();
  CRational inv_i = CRational(1) / CRational::i();
  for (int i = 0; i < nn; ++i) {
    PolyMv lhs;
    if (h_passive.is_zero()) {
      lhs = PolyMv(eps.fermionic_signature());
    } else {
      PolyMv comm = graded_commutator(eps.zeta(i), h_passive);
      lhs = PolyMv(comm.signature());
      for (const auto& [mask, c] : comm.blades()) lhs.accumulate(mask, c.scaled(inv_i));
    }
    PolyMv rhs(eps.fermionic_signature());
    for (int j = 0; j < nn; ++j) {
      for (int k = 0; k < nn; ++k) {
        Rational jjk = eps.coupling(j, k);
        if (jjk.is_zero()) continue;
        PolyScalar h_ki = h.diff(eps.z_name(k)).diff(eps.z_name(i));
        if (h_ki.is_zero()) continue;
        rhs += eps.zeta(j).scaled(h_ki.scaled(CRational(-jjk)));
      }
    }
    if (lhs != rhs) {
      out.ok = false;
      out.failures.push_back("generator " + std::to_string(i + 1));
    }
  }
  return out;
}

PolyMv brst_charge(const ExtendedPhaseSpace& eps) {
  PolyMv q(eps.fermionic_signature());
  for (int j = 0; j < eps.n(); ++j) q += eps.lambda(j).scaled(eps.y(j));
  return q;
}

PolyMv anti_brst_charge(const ExtendedPhaseSpace& eps) {
  PolyMv qb(eps.fermionic_signature());
  for (int j = 0; j < eps.n(); ++j) {
    for (int k = 0; k < eps.n(); ++k) {
      Rational jjk = eps.coupling(j, k);
      if (jjk.is_zero()) continue;
      qb += eps.zeta(j).scaled(eps.y(k).scaled(CRational(jjk)));
    }
  }
  return qb;
}

BrstReport brst_check(const PolyScalar& h, const ExtendedPhaseSpace& eps) {
  BrstReport rep;
  rep.q = brst_charge(eps);
  rep.qbar = anti_brst_charge(eps);
  PolyMv he = extended_hamiltonian(h, eps);

  rep.q_conserved = extended_bracket(rep.q, he, eps).is_zero();
  rep.qbar_conserved = extended_bracket(rep.qbar, he, eps).is_zero();
  rep.q_nilpotent = extended_bracket(rep.q, rep.q, eps).is_zero();
  rep.qbar_nilpotent = extended_bracket(rep.qbar, rep.qbar, eps).is_zero();
  rep.anticommute = extended_bracket(rep.q, rep.qbar, eps).is_zero();

  // canonical relations: {z^i, y_j} = delta, {zeta_i, lambda^j} = -i delta,
  // everything else zero
  bool ok = true;
  const int nn = eps.n();
  for (int a = 0; a < nn && ok; ++a) {
    for (int b = 0; b < nn && ok; ++b) {
      PolyMv zb = extended_bracket(eps.scalar(eps.z(a)), eps.scalar(eps.y(b)), eps);
      PolyMv expect_zy(eps.fermionic_signature());
      if (a == b) expect_zy = eps.scalar(eps.constant(CRational(1)));
      ok = ok && zb == expect_zy;
      PolyMv fb = extended_bracket(eps.zeta(a), eps.lambda(b), eps);
      PolyMv expect_zl(eps.fermionic_signature());
      if (a == b) expect_zl = eps.scalar(eps.constant(CRational(Rational(0), Rational(-1))));
      ok = ok && fb == expect_zl;
      ok = ok && extended_bracket(eps.scalar(eps.z(a)), eps.scalar(eps.z(b)), eps).is_zero();
      ok = ok && extended_bracket(eps.scalar(eps.y(a)), eps.scalar(eps.y(b)), eps).is_zero();
      ok = ok && extended_bracket(eps.zeta(a), eps.zeta(b), eps).is_zero();
      ok = ok && extended_bracket(eps.lambda(a), eps.lambda(b), eps).is_zero();
      ok = ok && extended_bracket(eps.zeta(a), eps.scalar(eps.z(b)), eps).is_zero();
      ok = ok && extended_bracket(eps.lambda(a), eps.scalar(eps.y(b)), eps).is_zero();
    }
  }
  rep.canonical_relations = ok;

  ExtendedEom got = extended_equations_of_motion(he, eps);
  ExtendedEom expect = expected_equations_of_motion(h, eps);
  bool match = true;
  for (int a = 0; a < nn; ++a) {
    match = match && got.z_dot[static_cast<size_t>(a)] == expect.z_dot[static_cast<size_t>(a)];
    match = match && got.y_dot[static_cast<size_t>(a)] == expect.y_dot[static_cast<size_t>(a)];
    match = match && got.zeta_dot[static_cast<size_t>(a)] == expect.zeta_dot[static_cast<size_t>(a)];
    match = match &&
            got.lambda_dot[static_cast<size_t>(a)] == expect.lambda_dot[static_cast<size_t>(a)];
  }
  rep.equations_match = match;
  return rep;
}

}  // namespace gastar
