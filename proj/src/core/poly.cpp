#include "core/poly.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace gastar {

int VariableRegistry::add(const std::string& name) {
  if (frozen_) throw math_error("variable registry is frozen");
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(names_.size());
  names_.push_back(name);
  index_[name] = id;
  return id;
}

int VariableRegistry::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int VariableRegistry::require(const std::string& name) const {
  int i = index_of(name);
  if (i < 0) throw math_error("unknown variable: " + name);
  return i;
}

RegistryPtr make_registry(const std::vector<std::string>& names) {
  auto reg = std::make_shared<VariableRegistry>();
  for (const auto& n : names) reg->add(n);
  reg->freeze();
  return reg;
}

PolyScalar PolyScalar::constant(const CRational& c) {
  PolyScalar p;
  if (!c.is_zero()) p.terms_[Expo{}] = c;
  return p;
}

PolyScalar PolyScalar::constant(const RegistryPtr& reg, const CRational& c) {
  PolyScalar p;
  p.reg_ = reg;
  if (!c.is_zero()) p.terms_[Expo(reg ? reg->size() : 0, 0)] = c;
  return p;
}

PolyScalar PolyScalar::variable(const RegistryPtr& reg, const std::string& name) {
  if (!reg) throw math_error("variable needs a registry");
  PolyScalar p;
  p.reg_ = reg;
  Expo e(reg->size(), 0);
  e[static_cast<size_t>(reg->require(name))] = 1;
  p.terms_[e] = CRational(1);
  return p;
}

PolyScalar PolyScalar::monomial(const RegistryPtr& reg, const CRational& c, const Expo& e) {
  if (!reg || e.size() != reg->size()) throw math_error("monomial exponents do not match registry");
  PolyScalar p;
  p.reg_ = reg;
  if (!c.is_zero()) p.terms_[e] = c;
  return p;
}

bool PolyScalar::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const Expo& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](uint32_t x) { return x == 0; });
}

CRational PolyScalar::constant_value() const {
  if (terms_.empty()) return CRational();
  if (!is_constant()) throw math_error("polynomial is not constant");
  return terms_.begin()->second;
}

int PolyScalar::total_degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (uint32_t x : e) d += static_cast<int>(x);
    deg = std::max(deg, d);
  }
  return deg;
}

void PolyScalar::insert_term(const Expo& e, const CRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_[e] = c;
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void PolyScalar::align(PolyScalar& a, PolyScalar& b) {
  if (a.reg_ == b.reg_) return;
  auto lift = [](PolyScalar& p, const RegistryPtr& reg) {
    if (!p.is_constant()) throw math_error("polynomials from different registries");
    CRational c = p.constant_value();
    p = PolyScalar::constant(reg, c);
  };
  if (!a.reg_) {
    lift(a, b.reg_);
  } else if (!b.reg_) {
    lift(b, a.reg_);
  } else {
    throw math_error("polynomials from different registries");
  }
}

PolyScalar PolyScalar::operator-() const {
  PolyScalar p;
  p.reg_ = reg_;
  for (const auto& [e, c] : terms_) p.terms_[e] = -c;
  return p;
}

PolyScalar PolyScalar::operator+(const PolyScalar& o) const {
  PolyScalar a = *this, b = o;
  align(a, b);
  for (const auto& [e, c] : b.terms_) a.insert_term(e, c);
  return a;
}

PolyScalar PolyScalar::operator-(const PolyScalar& o) const { return *this + (-o); }

PolyScalar PolyScalar::operator*(const PolyScalar& o) const {
  PolyScalar a = *this, b = o;
  align(a, b);
  PolyScalar out;
  out.reg_ = a.reg_;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Expo e = ea;
      if (e.size() < eb.size()) e.resize(eb.size(), 0);
      for (size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
      out.insert_term(e, ca * cb);
    }
  }
  return out;
}

bool PolyScalar::operator==(const PolyScalar& o) const {
  PolyScalar d = *this - o;
  return d.is_zero();
}

PolyScalar PolyScalar::scaled(const CRational& c) const {
  PolyScalar p;
  p.reg_ = reg_;
  if (c.is_zero()) return p;
  for (const auto& [e, v] : terms_) p.terms_[e] = v * c;
  return p;
}

PolyScalar PolyScalar::diff(const std::string& var) const {
  if (!reg_) return PolyScalar();  // bare constant
  return diff(reg_->require(var));
}

PolyScalar PolyScalar::diff(int var_index) const {
  PolyScalar p;
  p.reg_ = reg_;
  size_t k = static_cast<size_t>(var_index);
  for (const auto& [e, c] : terms_) {
    if (k >= e.size() || e[k] == 0) continue;
    Expo d = e;
    d[k] -= 1;
    p.insert_term(d, c * CRational(Rational(static_cast<long long>(e[k]))));
  }
  return p;
}

CRational PolyScalar::eval(const std::map<std::string, CRational>& bindings) const {
  CRational acc;
  for (const auto& [e, c] : terms_) {
    CRational t = c;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = bindings.find(reg_->name(i));
      if (it == bindings.end()) throw math_error("unbound variable: " + reg_->name(i));
      for (uint32_t k = 0; k < e[i]; ++k) t *= it->second;
    }
    acc += t;
  }
  return acc;
}

std::complex<double> PolyScalar::eval_complex(const std::map<std::string, double>& bindings) const {
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [e, c] : terms_) {
    std::complex<double> t(c.re().to_double(), c.im().to_double());
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = bindings.find(reg_->name(i));
      if (it == bindings.end()) throw math_error("unbound variable: " + reg_->name(i));
      for (uint32_t k = 0; k < e[i]; ++k) t *= it->second;
    }
    acc += t;
  }
  return acc;
}

PolyScalar PolyScalar::substitute(const std::string& var, const Rational& value) const {
  if (!reg_) return *this;
  int vi = reg_->index_of(var);
  if (vi < 0) return *this;
  size_t k = static_cast<size_t>(vi);
  PolyScalar p;
  p.reg_ = reg_;
  for (const auto& [e, c] : terms_) {
    CRational t = c;
    for (uint32_t n = 0; n < e[k]; ++n) t *= CRational(value);
    Expo d = e;
    d[k] = 0;
    p.insert_term(d, t);
  }
  return p;
}

PolyScalar PolyScalar::divide_by_monomial(const CRational& c, const std::string& var,
                                          uint32_t power) const {
  if (c.is_zero()) throw math_error("division by zero monomial");
  PolyScalar p;
  p.reg_ = reg_;
  if (terms_.empty()) return p;
  size_t k = static_cast<size_t>(reg_->require(var));
  for (const auto& [e, v] : terms_) {
    if (e[k] < power) throw math_error("polynomial not divisible by " + var);
    Expo d = e;
    d[k] -= power;
    p.terms_[d] = v / c;
  }
  return p;
}

std::string PolyScalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string coeff = c.str();
    if (!first) out << " + ";
    first = false;
    bool has_var = false;
    std::ostringstream vars;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (has_var) vars << "*";
      has_var = true;
      vars << reg_->name(i);
      if (e[i] > 1) vars << "^" << e[i];
    }
    bool needs_paren = coeff.find('+') != std::string::npos ||
                       (coeff.find('-') != std::string::npos && coeff.rfind('-') > 0);
    if (!has_var) {
      out << coeff;
    } else if (coeff == "1") {
      out << vars.str();
    } else if (coeff == "-1") {
      out << "-" << vars.str();
    } else if (needs_paren) {
      out << "(" << coeff << ")*" << vars.str();
    } else {
      out << coeff << "*" << vars.str();
    }
  }
  return out.str();
}

std::string PolyScalar::to_json() const {
  nlohmann::ordered_json j;
  j["variables"] = reg_ ? reg_->names() : std::vector<std::string>{};
  auto& terms = j["terms"] = nlohmann::ordered_json::array();
  for (const auto& [e, c] : terms_) {
    nlohmann::ordered_json t;
    t["exponents"] = e;
    t["re"] = c.re().str();
    t["im"] = c.im().str();
    terms.push_back(std::move(t));
  }
  return j.dump();
}

PolyScalar PolyScalar::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<std::string> names = j.at("variables").get<std::vector<std::string>>();
  RegistryPtr reg = names.empty() ? nullptr : make_registry(names);
  PolyScalar p;
  p.reg_ = reg;
  for (const auto& t : j.at("terms")) {
    Expo e = t.at("exponents").get<Expo>();
    if (e.size() != names.size()) throw math_error("term exponents do not match variables");
    CRational c(Rational::parse(t.at("re").get<std::string>()),
                Rational::parse(t.at("im").get<std::string>()));
    p.insert_term(e, c);
  }
  return p;
}

}  // namespace gastar
