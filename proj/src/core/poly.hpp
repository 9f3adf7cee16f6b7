#pragma once

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "core/rational.hpp"

namespace gastar {

// Ordered set of commuting variable names. Built once per session, then
// frozen; polynomials hold a shared pointer to their registry.
class VariableRegistry {
 public:
  int add(const std::string& name);
  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  int index_of(const std::string& name) const;  // -1 when absent
  int require(const std::string& name) const;   // throws when absent
  size_t size() const { return names_.size(); }
  const std::string& name(size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  bool frozen_ = false;
};

using RegistryPtr = std::shared_ptr<const VariableRegistry>;

RegistryPtr make_registry(const std::vector<std::string>& names);

// Sparse multivariate polynomial over Gaussian rationals. Terms map a dense
// exponent vector (one slot per registered variable) to a nonzero
// coefficient. A null registry denotes a bare constant, which lifts into any
// registry on contact.
class PolyScalar {
 public:
  using Expo = std::vector<uint32_t>;
  using TermMap = std::map<Expo, CRational>;

  PolyScalar() = default;  // zero constant
  static PolyScalar constant(const CRational& c);
  static PolyScalar constant(const RegistryPtr& reg, const CRational& c);
  static PolyScalar variable(const RegistryPtr& reg, const std::string& name);
  static PolyScalar monomial(const RegistryPtr& reg, const CRational& c, const Expo& e);

  const RegistryPtr& registry() const { return reg_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  CRational constant_value() const;  // requires is_constant()
  int total_degree() const;          // -1 for zero

  PolyScalar operator-() const;
  PolyScalar operator+(const PolyScalar& o) const;
  PolyScalar operator-(const PolyScalar& o) const;
  PolyScalar operator*(const PolyScalar& o) const;
  PolyScalar& operator+=(const PolyScalar& o) { return *this = *this + o; }
  PolyScalar& operator-=(const PolyScalar& o) { return *this = *this - o; }
  PolyScalar& operator*=(const PolyScalar& o) { return *this = *this * o; }
  bool operator==(const PolyScalar& o) const;
  bool operator!=(const PolyScalar& o) const { return !(*this == o); }

  PolyScalar scaled(const CRational& c) const;
  PolyScalar diff(const std::string& var) const;
  PolyScalar diff(int var_index) const;

  // Exact evaluation; every variable appearing in the terms must be bound.
  CRational eval(const std::map<std::string, CRational>& bindings) const;
  std::complex<double> eval_complex(const std::map<std::string, double>& bindings) const;

  PolyScalar substitute(const std::string& var, const Rational& value) const;
  // Divides every term by the monomial c*var^power; throws when not divisible.
  PolyScalar divide_by_monomial(const CRational& c, const std::string& var, uint32_t power) const;

  std::string str() const;
  std::string to_json() const;
  static PolyScalar from_json(const std::string& text);

 private:
  RegistryPtr reg_;
  TermMap terms_;

  void insert_term(const Expo& e, const CRational& c);
  static void align(PolyScalar& a, PolyScalar& b);
  friend class PolyBuilder;
};

}  // namespace gastar
