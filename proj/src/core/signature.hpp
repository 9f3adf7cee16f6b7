#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/rational.hpp"

namespace gastar {

// Contraction kinds for the generator algebra. `pairing` admits an arbitrary
// (possibly one-sided) coupling matrix; symmetric/antisymmetric are enforced
// exactly.
enum class SignatureKind { symmetric, antisymmetric, pairing };

// Generator-space contraction: dimension, kind, and the exact coupling
// matrix used by the star product. Immutable after construction.
class Signature {
 public:
  Signature(std::string name, SignatureKind kind, std::vector<std::vector<Rational>> matrix);

  const std::string& name() const { return name_; }
  SignatureKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const Rational& contraction(int i, int j) const { return m_[i][j]; }
  const std::vector<std::vector<Rational>>& matrix() const { return m_; }

  bool same_as(const Signature& o) const;

  // det of the contraction matrix (lazy, cached).
  Rational determinant() const;
  // inverse matrix; throws for a degenerate contraction.
  const std::vector<std::vector<Rational>>& inverse() const;

  // All column subsets T with a potentially nonzero minor det(m[S,T]),
  // paired with that exact determinant. Rows/columns taken in ascending
  // index order. Zero determinants are dropped.
  const std::vector<std::pair<uint32_t, Rational>>& minors_for(uint32_t row_subset) const;

 private:
  std::string name_;
  SignatureKind kind_;
  int dim_;
  std::vector<std::vector<Rational>> m_;

  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<uint32_t, std::vector<std::pair<uint32_t, Rational>>> minor_cache_;
  mutable bool det_ready_ = false;
  mutable Rational det_;
  mutable bool inv_ready_ = false;
  mutable std::vector<std::vector<Rational>> inv_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

SignaturePtr euclidean_signature(int dim);
// diag(-1,1,...,1) when timelike_minus is true (the nonstandard choice),
// diag(1,-1,...,-1) otherwise.
SignaturePtr minkowski_signature(int dim, bool timelike_minus = true);
// Darboux block form: contraction(q_m, p_m) = 1, contraction(p_m, q_m) = -1.
SignaturePtr symplectic_signature(int dof);
SignaturePtr signature_from_matrix(const std::string& name, SignatureKind kind,
                                   std::vector<std::vector<Rational>> matrix);

Rational rational_matrix_det(std::vector<std::vector<Rational>> m);
// Solves a*x = b exactly; returns false when the system is inconsistent.
// a is column-major: a[j] is the j-th column.
bool solve_exact(const std::vector<std::vector<Rational>>& columns,
                 const std::vector<Rational>& rhs, std::vector<Rational>& x);

}  // namespace gastar
