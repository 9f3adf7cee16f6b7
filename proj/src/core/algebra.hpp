#pragma once

#include <string>
#include <vector>

#include "core/multivector.hpp"

namespace gastar {

// Finite-dimensional algebra of grade-2 multivectors closed under the
// commutator product, with exact structure constants C^k_ij from
// B_i x B_j = C^k_ij B_k and Killing pairing kappa_ij = B_i . B_j.
struct BivectorAlgebra {
  std::string name;
  SignaturePtr sig;
  std::vector<PolyMv> generators;
  std::vector<std::string> labels;
  std::vector<std::vector<std::vector<Rational>>> structure;  // [i][j][k]
  std::vector<std::vector<Rational>> killing;

  size_t size() const { return generators.size(); }
  const Rational& c(size_t i, size_t j, size_t k) const { return structure[i][j][k]; }
};

// Solves the expansion of every commutator in the generator span exactly;
// throws naming the offending pair when the set is not closed.
BivectorAlgebra algebra_from_generators(const std::string& name, const SignaturePtr& sig,
                                        std::vector<PolyMv> generators,
                                        std::vector<std::string> labels);

bool structure_jacobi_ok(const BivectorAlgebra& a);
bool structure_antisymmetric_ok(const BivectorAlgebra& a);

BivectorAlgebra so3_algebra();
// Passive boost/rotation generators on a 4d Minkowski signature.
BivectorAlgebra lorentz_algebra(bool timelike_minus = true);
// u(n) on the doubled euclidean space; gl(n) on the split signature.
BivectorAlgebra unitary_algebra(int n);
BivectorAlgebra gl_algebra(int n);

// J = sum_i alpha_i beta_i on the doubled space of unitary_algebra(n).
PolyMv unitary_j(const BivectorAlgebra& un);

struct UnitaryInvarianceReport {
  bool commutators_vanish = false;  // B x J = 0 for every generator
  double rotor_residual = 0.0;      // max |R J R~ - J| over sampled rotors
};
UnitaryInvarianceReport unitary_invariance_check(const BivectorAlgebra& un,
                                                 const std::vector<double>& rotor_parameters);

// ad_A B = A x B
template <class Coeff>
Multivector<Coeff> ad(const Multivector<Coeff>& a, const Multivector<Coeff>& b) {
  return commutator(a, b);
}

// Ad_R B = R * B * reverse(R); coadjoint right action reverse(R) * T * R.
RealMv adjoint(const RealMv& rotor, const RealMv& b);
RealMv coadjoint(const RealMv& rotor, const RealMv& theta);

// Duality pairing <reverse(B) * T>_0.
double pairing(const RealMv& b, const RealMv& theta);
PolyScalar pairing(const PolyMv& b, const PolyMv& theta);

// Vector field induced by a rotor one-parameter action, evaluated on the
// symbolic point x = x^i e_i: components of B . x as polynomials in x^i.
struct PolyField {
  RegistryPtr reg;
  std::vector<PolyScalar> components;  // on e_1..e_d
};
PolyField induced_field(const PolyMv& bivector, const RegistryPtr& reg,
                        const std::vector<std::string>& coord_names);
PolyField field_jacobi_lie(const PolyField& a, const PolyField& b,
                           const std::vector<std::string>& coord_names);

// {F,G} = C^k_ij theta_k dF/dtheta_i dG/dtheta_j on dual coordinates.
PolyScalar lie_poisson_bracket(const PolyScalar& f, const PolyScalar& g,
                               const BivectorAlgebra& a, const RegistryPtr& reg,
                               const std::vector<std::string>& dual_names);

}  // namespace gastar
