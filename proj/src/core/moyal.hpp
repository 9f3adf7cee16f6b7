#pragma once

#include <string>
#include <vector>

#include "core/poly.hpp"
#include "core/signature.hpp"

namespace gastar {

// Bosonic phase space: an ordered set of 2n polynomial variables with an
// exact antisymmetric coupling matrix J^{ab}, plus the formal deformation
// variable. Darboux form couples q_m with p_m at +1.
class PhaseSpace {
 public:
  static PhaseSpace darboux(int dof);
  // Pairs x^mu with p^nu through a symmetric metric block:
  // J[x^mu][p^nu] = eta^{mu nu}, J[p^mu][x^nu] = -eta^{mu nu}.
  static PhaseSpace with_metric(const std::vector<std::vector<Rational>>& eta,
                                const std::string& coord_prefix = "x",
                                const std::string& momentum_prefix = "p");

  int dof() const { return dof_; }
  int dim() const { return static_cast<int>(vars_.size()); }
  const RegistryPtr& registry() const { return reg_; }
  const std::string& var_name(int a) const { return vars_[static_cast<size_t>(a)]; }
  const std::string& hbar_name() const { return hbar_; }
  const Rational& coupling(int a, int b) const {
    return j_[static_cast<size_t>(a)][static_cast<size_t>(b)];
  }
  const std::vector<std::vector<Rational>>& coupling_matrix() const { return j_; }

  PolyScalar var(const std::string& name) const { return PolyScalar::variable(reg_, name); }
  PolyScalar var(int a) const { return var(var_name(a)); }
  PolyScalar hbar() const { return PolyScalar::variable(reg_, hbar_); }
  PolyScalar constant(const CRational& c) const { return PolyScalar::constant(reg_, c); }

  void require_scope(const PolyScalar& f) const;

 private:
  int dof_ = 0;
  std::vector<std::string> vars_;
  std::string hbar_ = "hbar";
  RegistryPtr reg_;
  std::vector<std::vector<Rational>> j_;
};

// F exp[(i hbar / 2) J^{ab} d_a d_b] G, expanded exactly (terminates at the
// total degree of the factors).
PolyScalar moyal_star(const PolyScalar& f, const PolyScalar& g, const PhaseSpace& ps);
PolyScalar moyal_commutator(const PolyScalar& f, const PolyScalar& g, const PhaseSpace& ps);
// J^{ab} (d_a f)(d_b g)
PolyScalar poisson_bracket(const PolyScalar& f, const PolyScalar& g, const PhaseSpace& ps);
// Exact division by i*hbar followed by hbar -> 0.
PolyScalar classical_limit(const PolyScalar& f, const PhaseSpace& ps);

// Flow of a strictly quadratic Hamiltonian: z(t) = exp(t J Hess H) z(0).
struct LinearFlow {
  std::vector<std::string> vars;
  std::vector<std::vector<double>> matrix;
};
LinearFlow hamiltonian_flow_quadratic(const PolyScalar& h, double t, const PhaseSpace& ps);

std::vector<std::vector<double>> matrix_exp(std::vector<std::vector<double>> m);

// Quadratic generators E^{ij} = q^i p^j + q^j p^i, F^{ij} = q^i p^j - q^j p^i,
// K^i = q^i p^i on a Darboux space with n dof.
struct QuadraticGenerators {
  std::vector<PolyScalar> elements;
  std::vector<std::string> labels;
};
QuadraticGenerators gl_bosonic_generators(int n, const PhaseSpace& ps);

// Expands each Moyal commutator of the generator list in span{1, generators}
// with polynomial-in-(i hbar) coefficients; throws when some commutator
// escapes the span.
void require_moyal_closure(const QuadraticGenerators& gens, const PhaseSpace& ps);

}  // namespace gastar
