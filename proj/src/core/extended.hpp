#pragma once

#include <string>
#include <vector>

#include "core/moyal.hpp"
#include "core/multivector.hpp"

namespace gastar {

// Doubled phase space (z, y) with ghost generators (zeta, lambda): bosonic
// variables q1..qd, p1..pd, y1..y2d and a 4d fermionic signature whose only
// contractions pair zeta_k with lambda^k at 1/2 each way.
class ExtendedPhaseSpace {
 public:
  explicit ExtendedPhaseSpace(int dof, bool include_hbar = false);

  int dof() const { return dof_; }
  int n() const { return 2 * dof_; }  // z-dimension
  bool with_hbar() const { return include_hbar_; }
  const RegistryPtr& registry() const { return reg_; }
  const SignaturePtr& fermionic_signature() const { return fsig_; }

  // z^1..z^n are q1..qd,p1..pd in order
  const std::string& z_name(int a) const { return z_names_[static_cast<size_t>(a)]; }
  const std::string& y_name(int a) const { return y_names_[static_cast<size_t>(a)]; }
  PolyScalar z(int a) const { return PolyScalar::variable(reg_, z_name(a)); }
  PolyScalar y(int a) const { return PolyScalar::variable(reg_, y_name(a)); }
  PolyScalar constant(const CRational& c) const { return PolyScalar::constant(reg_, c); }

  PolyMv zeta(int a) const { return PolyMv::basis_vector(fsig_, a); }
  PolyMv lambda(int a) const { return PolyMv::basis_vector(fsig_, n() + a); }
  PolyMv scalar(const PolyScalar& f) const { return PolyMv::scalar(fsig_, f); }

  Rational coupling(int a, int b) const;  // Darboux J^{ab}

  void require_scope(const PolyMv& f) const;

 private:
  int dof_;
  bool include_hbar_;
  std::vector<std::string> z_names_;
  std::vector<std::string> y_names_;
  RegistryPtr reg_;
  SignaturePtr fsig_;
};

// Coefficient-wise polynomial derivative of a multivector.
PolyMv mv_diff(const PolyMv& m, const std::string& var);
PolyMv mv_substitute(const PolyMv& m, const std::string& var, const Rational& value);

// Combined product: fermionic contraction on (zeta, lambda) and the exact
// bosonic exponential coupling z^k with y_k at i/2 per order (times hbar when
// the space carries it).
PolyMv extended_star(const PolyMv& f, const PolyMv& g, const ExtendedPhaseSpace& eps);

// (1/i)[F*G - (-1)^{|F||G|} G*F] for arguments of definite Grassmann parity;
// with hbar enabled the exact hbar->0 limit is taken.
PolyMv extended_bracket(const PolyMv& f, const PolyMv& g, const ExtendedPhaseSpace& eps);

// y_i J^{ij} d_j H + i zeta_j J^{jk} (d_l d_k H) lambda^l
PolyMv extended_hamiltonian(const PolyScalar& h, const ExtendedPhaseSpace& eps);

struct ExtendedEom {
  std::vector<PolyMv> z_dot;
  std::vector<PolyMv> y_dot;
  std::vector<PolyMv> zeta_dot;
  std::vector<PolyMv> lambda_dot;
};
ExtendedEom extended_equations_of_motion(const PolyMv& h_ext, const ExtendedPhaseSpace& eps);
// The same four families built directly from derivatives of H, for
// independent comparison.
ExtendedEom expected_equations_of_motion(const PolyScalar& h, const ExtendedPhaseSpace& eps);

// Ghost bivector i zeta_j J^{jk} (d_l d_k H) lambda^l.
PolyMv passive_hamiltonian_from(const PolyScalar& h, const ExtendedPhaseSpace& eps);

struct PassiveCheck {
  bool ok = true;
  std::vector<std::string> failures;
};
// Verifies (1/i)[zeta_i, Hp] = -J^{jk} (d_k d_i H) zeta_j for every i.
PassiveCheck passive_hamiltonian_check(const PolyScalar& h, const PolyMv& h_passive,
                                       const ExtendedPhaseSpace& eps);

struct BrstReport {
  PolyMv q;
  PolyMv qbar;
  bool q_conserved = false;
  bool qbar_conserved = false;
  bool q_nilpotent = false;
  bool qbar_nilpotent = false;
  bool anticommute = false;
  bool canonical_relations = false;
  bool equations_match = false;
  bool all() const {
    return q_conserved && qbar_conserved && q_nilpotent && qbar_nilpotent && anticommute &&
           canonical_relations && equations_match;
  }
};
BrstReport brst_check(const PolyScalar& h, const ExtendedPhaseSpace& eps);

PolyMv brst_charge(const ExtendedPhaseSpace& eps);       // y_j lambda^j
PolyMv anti_brst_charge(const ExtendedPhaseSpace& eps);  // zeta_j J^{jk} y_k

}  // namespace gastar
