#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <vector>

#include "core/poly.hpp"
#include "core/signature.hpp"

namespace gastar {

template <class Coeff>
struct CoeffOps;

template <>
struct CoeffOps<PolyScalar> {
  static bool is_zero(const PolyScalar& c) { return c.is_zero(); }
  static PolyScalar add(const PolyScalar& a, const PolyScalar& b) { return a + b; }
  static PolyScalar mul(const PolyScalar& a, const PolyScalar& b) { return a * b; }
  static PolyScalar neg(const PolyScalar& a) { return -a; }
  static PolyScalar scale(const PolyScalar& a, const Rational& r) {
    return a.scaled(CRational(r));
  }
  static PolyScalar one() { return PolyScalar::constant(CRational(1)); }
  static std::string str(const PolyScalar& a) { return a.str(); }
  static double max_abs(const PolyScalar&) { return 0.0; }
};

template <>
struct CoeffOps<double> {
  static bool is_zero(double c) { return c == 0.0; }
  static double add(double a, double b) { return a + b; }
  static double mul(double a, double b) { return a * b; }
  static double neg(double a) { return -a; }
  static double scale(double a, const Rational& r) { return a * r.to_double(); }
  static double one() { return 1.0; }
  static std::string str(double a) {
    std::ostringstream s;
    s.precision(17);
    s << a;
    return s.str();
  }
  static double max_abs(double a) { return std::fabs(a); }
};

// Transposition count for merging two ascending index sets.
inline int reorder_parity(uint32_t a, uint32_t b) {
  int count = 0;
  uint32_t t = a >> 1;
  while (t) {
    count += std::popcount(t & b);
    t >>= 1;
  }
  return count;
}

// Sign of removing `sub` from `mask` by right-derivatives in ascending order.
inline int removal_sign_right(uint32_t mask, uint32_t sub) {
  int count = 0;
  uint32_t s = sub;
  while (s) {
    uint32_t bit = s & (~s + 1);
    s ^= bit;
    count += std::popcount(mask & ~((bit << 1) - 1));
  }
  return (count & 1) ? -1 : 1;
}

// Sign of removing `sub` from `mask` by left-derivatives in ascending order.
inline int removal_sign_left(uint32_t mask, uint32_t sub) {
  int count = 0;
  int removed = 0;
  uint32_t s = sub;
  while (s) {
    uint32_t bit = s & (~s + 1);
    s ^= bit;
    count += std::popcount(mask & (bit - 1)) - removed;
    ++removed;
  }
  return (count & 1) ? -1 : 1;
}

// Sparse multivector over a generator signature: blade bitmask -> coefficient,
// zero coefficients never stored.
template <class Coeff>
class Multivector {
 public:
  using Ops = CoeffOps<Coeff>;
  using BladeMap = std::map<uint32_t, Coeff>;

  Multivector() = default;
  explicit Multivector(SignaturePtr sig) : sig_(std::move(sig)) {}

  static Multivector scalar(SignaturePtr sig, Coeff value) {
    Multivector m(std::move(sig));
    m.accumulate(0, std::move(value));
    return m;
  }
  static Multivector basis_vector(SignaturePtr sig, int i) {
    if (i < 0 || i >= sig->dim()) throw math_error("generator index out of range");
    Multivector m(sig);
    m.accumulate(1u << i, Ops::one());
    return m;
  }
  static Multivector blade(SignaturePtr sig, uint32_t mask, Coeff value) {
    if (mask >> sig->dim()) throw math_error("blade mask out of range");
    Multivector m(std::move(sig));
    m.accumulate(mask, std::move(value));
    return m;
  }

  const SignaturePtr& signature() const { return sig_; }
  const BladeMap& blades() const { return blades_; }
  bool is_zero() const { return blades_.empty(); }

  void accumulate(uint32_t mask, Coeff value) {
    if (Ops::is_zero(value)) return;
    auto it = blades_.find(mask);
    if (it == blades_.end()) {
      blades_.emplace(mask, std::move(value));
      return;
    }
    it->second = Ops::add(it->second, value);
    if (Ops::is_zero(it->second)) blades_.erase(it);
  }

  Coeff coeff(uint32_t mask) const {
    auto it = blades_.find(mask);
    return it == blades_.end() ? Coeff{} : it->second;
  }
  Coeff scalar_part() const { return coeff(0); }

  Multivector operator-() const {
    Multivector m(sig_);
    for (const auto& [k, v] : blades_) m.blades_[k] = Ops::neg(v);
    return m;
  }
  Multivector operator+(const Multivector& o) const {
    check_signature(o);
    Multivector m = *this;
    if (!m.sig_) m.sig_ = o.sig_;
    for (const auto& [k, v] : o.blades_) m.accumulate(k, v);
    return m;
  }
  Multivector operator-(const Multivector& o) const { return *this + (-o); }
  Multivector& operator+=(const Multivector& o) { return *this = *this + o; }
  Multivector& operator-=(const Multivector& o) { return *this = *this - o; }

  Multivector scaled(const Coeff& c) const {
    Multivector m(sig_);
    for (const auto& [k, v] : blades_) m.accumulate(k, Ops::mul(v, c));
    return m;
  }
  Multivector scaled(const Rational& r) const {
    Multivector m(sig_);
    if (r.is_zero()) return m;
    for (const auto& [k, v] : blades_) m.blades_[k] = Ops::scale(v, r);
    return m;
  }

  bool operator==(const Multivector& o) const {
    return (*this - o).is_zero();
  }
  bool operator!=(const Multivector& o) const { return !(*this == o); }

  std::vector<int> grades() const {
    std::vector<int> out;
    for (const auto& [k, v] : blades_) {
      int g = std::popcount(k);
      if (out.empty() || out.back() != g) {
        if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  // grade when homogeneous; -1 for zero; throws otherwise
  int homogeneous_grade() const {
    if (blades_.empty()) return -1;
    int g = std::popcount(blades_.begin()->first);
    for (const auto& [k, v] : blades_)
      if (std::popcount(k) != g) throw math_error("multivector is not grade-homogeneous");
    return g;
  }
  bool is_homogeneous() const {
    if (blades_.empty()) return true;
    int g = std::popcount(blades_.begin()->first);
    for (const auto& [k, v] : blades_)
      if (std::popcount(k) != g) return false;
    return true;
  }
  bool has_definite_parity(int& parity) const {
    if (blades_.empty()) {
      parity = 0;
      return true;
    }
    parity = std::popcount(blades_.begin()->first) & 1;
    for (const auto& [k, v] : blades_)
      if ((std::popcount(k) & 1) != parity) return false;
    return true;
  }

  Multivector grade_part(int n) const {
    if (sig_ && (n < 0 || n > sig_->dim())) throw math_error("grade out of range");
    Multivector m(sig_);
    for (const auto& [k, v] : blades_)
      if (std::popcount(k) == n) m.blades_[k] = v;
    return m;
  }

  Multivector reversed() const {
    Multivector m(sig_);
    for (const auto& [k, v] : blades_) {
      int r = std::popcount(k);
      m.blades_[k] = ((r * (r - 1) / 2) & 1) ? Ops::neg(v) : v;
    }
    return m;
  }

  double max_abs() const {
    double best = 0.0;
    for (const auto& [k, v] : blades_) best = std::max(best, Ops::max_abs(v));
    return best;
  }

  std::string str(const std::vector<std::string>& gen_names = {}) const {
    if (blades_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, v] : blades_) {
      if (!first) out << " + ";
      first = false;
      out << "(" << Ops::str(v) << ")";
      for (int b = 0; b < 32; ++b) {
        if (!(k & (1u << b))) continue;
        out << "*";
        if (static_cast<size_t>(b) < gen_names.size())
          out << gen_names[static_cast<size_t>(b)];
        else
          out << "e" << (b + 1);
      }
    }
    return out.str();
  }

  void check_signature(const Multivector& o) const {
    if (!sig_ || !o.sig_) return;
    if (sig_ == o.sig_) return;
    if (!sig_->same_as(*o.sig_)) throw math_error("signature mismatch");
  }

 private:
  SignaturePtr sig_;
  BladeMap blades_;
};

using PolyMv = Multivector<PolyScalar>;
using RealMv = Multivector<double>;

template <class Coeff>
Multivector<Coeff> wedge(const Multivector<Coeff>& a, const Multivector<Coeff>& b) {
  a.check_signature(b);
  Multivector<Coeff> out(a.signature() ? a.signature() : b.signature());
  for (const auto& [ma, ca] : a.blades()) {
    for (const auto& [mb, cb] : b.blades()) {
      if (ma & mb) continue;
      Coeff v = CoeffOps<Coeff>::mul(ca, cb);
      if (reorder_parity(ma, mb) & 1) v = CoeffOps<Coeff>::neg(v);
      out.accumulate(ma | mb, std::move(v));
    }
  }
  return out;
}

// The deformed Grassmann product: wedge corrected by all k-fold contractions
// against the signature matrix. Finite by nilpotency; exact for exact
// coefficients.
template <class Coeff>
Multivector<Coeff> star(const Multivector<Coeff>& a, const Multivector<Coeff>& b) {
  a.check_signature(b);
  const SignaturePtr& sig = a.signature() ? a.signature() : b.signature();
  if (!sig) throw math_error("star product needs a signature");
  Multivector<Coeff> out(sig);
  for (const auto& [ma, ca] : a.blades()) {
    for (const auto& [mb, cb] : b.blades()) {
      uint32_t s = ma;
      while (true) {
        for (const auto& [t, det] : sig->minors_for(s)) {
          if ((t & mb) != t) continue;
          uint32_t rem_a = ma ^ s;
          uint32_t rem_b = mb ^ t;
          if (rem_a & rem_b) continue;
          int parity = reorder_parity(rem_a, rem_b);
          int sgn = removal_sign_right(ma, s) * removal_sign_left(mb, t) *
                    ((parity & 1) ? -1 : 1);
          Coeff v = CoeffOps<Coeff>::mul(ca, cb);
          v = CoeffOps<Coeff>::scale(v, sgn < 0 ? -det : det);
          out.accumulate(rem_a | rem_b, std::move(v));
        }
        if (s == 0) break;
        s = (s - 1) & ma;
      }
    }
  }
  return out;
}

// Same product, split by contraction order: out[k] collects the k-fold
// contraction terms, so star(a, b) equals the sum over k.
template <class Coeff>
std::vector<Multivector<Coeff>> star_by_order(const Multivector<Coeff>& a,
                                              const Multivector<Coeff>& b) {
  a.check_signature(b);
  const SignaturePtr& sig = a.signature() ? a.signature() : b.signature();
  if (!sig) throw math_error("star product needs a signature");
  std::vector<Multivector<Coeff>> out(static_cast<size_t>(sig->dim()) + 1, Multivector<Coeff>(sig));
  for (const auto& [ma, ca] : a.blades()) {
    for (const auto& [mb, cb] : b.blades()) {
      uint32_t s = ma;
      while (true) {
        int order = std::popcount(s);
        for (const auto& [t, det] : sig->minors_for(s)) {
          if ((t & mb) != t) continue;
          uint32_t rem_a = ma ^ s;
          uint32_t rem_b = mb ^ t;
          if (rem_a & rem_b) continue;
          int parity = reorder_parity(rem_a, rem_b);
          int sgn = removal_sign_right(ma, s) * removal_sign_left(mb, t) *
                    ((parity & 1) ? -1 : 1);
          Coeff v = CoeffOps<Coeff>::mul(ca, cb);
          v = CoeffOps<Coeff>::scale(v, sgn < 0 ? -det : det);
          out[static_cast<size_t>(order)].accumulate(rem_a | rem_b, std::move(v));
        }
        if (s == 0) break;
        s = (s - 1) & ma;
      }
    }
  }
  return out;
}

template <class Coeff>
Multivector<Coeff> commutator(const Multivector<Coeff>& a, const Multivector<Coeff>& b) {
  return (star(a, b) - star(b, a)).scaled(Rational(1, 2));
}

// [A_r, B_s] = A*B - (-1)^{rs} B*A for grade-homogeneous arguments.
template <class Coeff>
Multivector<Coeff> graded_commutator(const Multivector<Coeff>& a, const Multivector<Coeff>& b) {
  int r = a.homogeneous_grade();
  int s = b.homogeneous_grade();
  if (r < 0 || s < 0) return star(a, b) - star(b, a);
  Multivector<Coeff> ba = star(b, a);
  if ((r * s) & 1) return star(a, b) + ba;
  return star(a, b) - ba;
}

template <class Coeff>
Multivector<Coeff> inner(const Multivector<Coeff>& a, const Multivector<Coeff>& b) {
  int r = a.homogeneous_grade();
  int s = b.homogeneous_grade();
  if (r < 0 || s < 0) return Multivector<Coeff>(a.signature() ? a.signature() : b.signature());
  return star(a, b).grade_part(std::abs(r - s));
}

template <class Coeff>
Multivector<Coeff> outer(const Multivector<Coeff>& a, const Multivector<Coeff>& b) {
  int r = a.homogeneous_grade();
  int s = b.homogeneous_grade();
  if (r < 0 || s < 0) return Multivector<Coeff>(a.signature() ? a.signature() : b.signature());
  int d = (a.signature() ? a.signature() : b.signature())->dim();
  if (r + s > d) return Multivector<Coeff>(a.signature() ? a.signature() : b.signature());
  return star(a, b).grade_part(r + s);
}

template <class Coeff>
Multivector<Coeff> pseudoscalar(const SignaturePtr& sig) {
  return Multivector<Coeff>::blade(sig, (1u << sig->dim()) - 1, CoeffOps<Coeff>::one());
}

namespace detail {

// Hodge expansion of a single blade, emitted as (mask, rational factor) pairs;
// the sqrt|det| volume factor is applied by the caller.
inline void hodge_blade_terms(const Signature& sig, uint32_t mask,
                              std::vector<std::pair<uint32_t, Rational>>& out) {
  if (sig.kind() != SignatureKind::symmetric) throw math_error("hodge needs a symmetric signature");
  const auto& ginv = sig.inverse();
  const int d = sig.dim();
  const uint32_t full = (1u << d) - 1;
  const int r = std::popcount(mask);
  std::vector<int> urows;
  for (int b = 0; b < d; ++b)
    if (mask & (1u << b)) urows.push_back(b);

  // complement subsets W of size d-r; columns J = complement(W)
  for (uint32_t w = 0; w <= full; ++w) {
    if (std::popcount(w) != d - r) continue;
    uint32_t j = full & ~w;
    std::vector<int> jcols;
    for (int b = 0; b < d; ++b)
      if (j & (1u << b)) jcols.push_back(b);
    std::vector<std::vector<Rational>> sub(static_cast<size_t>(r),
                                           std::vector<Rational>(static_cast<size_t>(r)));
    for (int x = 0; x < r; ++x)
      for (int y = 0; y < r; ++y)
        sub[static_cast<size_t>(x)][static_cast<size_t>(y)] =
            ginv[static_cast<size_t>(urows[static_cast<size_t>(x)])]
                [static_cast<size_t>(jcols[static_cast<size_t>(y)])];
    Rational det = rational_matrix_det(std::move(sub));
    if (det.is_zero()) continue;
    if (reorder_parity(j, w) & 1) det = -det;
    out.emplace_back(w, det);
  }
}

}  // namespace detail

// Hodge dual with orientation fixed by ascending generator order. Exact
// coefficients require the metric volume to be a rational square.
template <class Coeff>
Multivector<Coeff> hodge_dual(const Multivector<Coeff>& a);

template <>
inline PolyMv hodge_dual(const PolyMv& a) {
  const SignaturePtr& sig = a.signature();
  Rational det = sig->determinant();
  Rational vol;
  if (!det.abs().sqrt_exact(vol))
    throw math_error("metric volume is not rational; use the numeric backend");
  PolyMv out(sig);
  std::vector<std::pair<uint32_t, Rational>> terms;
  for (const auto& [mask, c] : a.blades()) {
    terms.clear();
    detail::hodge_blade_terms(*sig, mask, terms);
    for (const auto& [w, f] : terms) out.accumulate(w, c.scaled(CRational(f * vol)));
  }
  return out;
}

template <>
inline RealMv hodge_dual(const RealMv& a) {
  const SignaturePtr& sig = a.signature();
  double vol = std::sqrt(std::fabs(sig->determinant().to_double()));
  RealMv out(sig);
  std::vector<std::pair<uint32_t, Rational>> terms;
  for (const auto& [mask, c] : a.blades()) {
    terms.clear();
    detail::hodge_blade_terms(*sig, mask, terms);
    for (const auto& [w, f] : terms) out.accumulate(w, c * f.to_double() * vol);
  }
  return out;
}

// Inverse Hodge: sign(det g) * (-1)^{r(d-r)} * hodge, per homogeneous grade.
template <class Coeff>
Multivector<Coeff> hodge_inverse(const Multivector<Coeff>& a) {
  const SignaturePtr& sig = a.signature();
  int d = sig->dim();
  int det_sign = sig->determinant().sign();
  Multivector<Coeff> out(sig);
  for (int r = 0; r <= d; ++r) {
    Multivector<Coeff> part = a.grade_part(r);
    if (part.is_zero()) continue;
    Multivector<Coeff> h = hodge_dual(part);
    int sgn = ((r * (d - r)) & 1) ? -1 : 1;
    sgn *= det_sign;
    out += (sgn < 0) ? -h : h;
  }
  return out;
}

// ---- numeric rotor machinery ----

inline bool is_scalar_only(const RealMv& m) {
  for (const auto& [k, v] : m.blades())
    if (k != 0) return false;
  return true;
}

inline RealMv rotor_exp(const RealMv& bivector, double t, double tol = 1e-14,
                        int max_terms = 200) {
  if (!bivector.is_zero() && bivector.homogeneous_grade() != 2)
    throw math_error("rotor generator must be a bivector");
  const SignaturePtr& sig = bivector.signature();
  RealMv x = bivector.scaled(Rational(1, 2)).scaled(t);
  RealMv b2 = star(bivector, bivector);
  if (is_scalar_only(b2)) {
    double mu = b2.scalar_part();
    double h = t / 2.0;
    if (mu < 0.0) {
      double lam = std::sqrt(-mu);
      RealMv out = RealMv::scalar(sig, std::cos(lam * h));
      out += bivector.scaled(std::sin(lam * h) / lam);
      return out;
    }
    if (mu > 0.0) {
      double lam = std::sqrt(mu);
      RealMv out = RealMv::scalar(sig, std::cosh(lam * h));
      out += bivector.scaled(std::sinh(lam * h) / lam);
      return out;
    }
    RealMv out = RealMv::scalar(sig, 1.0);
    out += x;
    return out;
  }
  RealMv sum = RealMv::scalar(sig, 1.0);
  RealMv term = RealMv::scalar(sig, 1.0);
  for (int k = 1; k <= max_terms; ++k) {
    term = star(term, x).scaled(1.0 / k);
    sum += term;
    if (term.max_abs() < tol * std::max(1.0, sum.max_abs())) return sum;
  }
  throw math_error("rotor exponential did not converge");
}

inline void require_rotor(const RealMv& r, double tol = 1e-9) {
  for (const auto& [k, v] : r.blades())
    if (std::popcount(k) & 1) throw math_error("rotor must be an even multivector");
  RealMv unit = star(r, r.reversed());
  if ((unit - unit.grade_part(0)).max_abs() > tol) throw math_error("rotor unit check failed");
  double s = unit.scalar_part();
  if (std::fabs(s + 1.0) < tol)
    throw math_error("unit-negative spin element; only the +1 rotor component is supported");
  if (std::fabs(s - 1.0) > tol) throw math_error("rotor unit check failed");
}

// Active form R * A * reverse(R).
inline RealMv apply_rotor(const RealMv& r, const RealMv& a) {
  require_rotor(r);
  return star(star(r, a), r.reversed());
}

// Passive form reverse(R) * A * R.
inline RealMv apply_rotor_passive(const RealMv& r, const RealMv& a) {
  require_rotor(r);
  return star(star(r.reversed(), a), r);
}

// |A|^2 = <reverse(A) * A>_0
inline double norm_squared(const RealMv& a) {
  return star(a.reversed(), a).scalar_part();
}

// Exact rotor for a nilpotent generator: 1 + (t/2) B.
inline PolyMv rotor_exp_nilpotent(const PolyMv& bivector, const PolyScalar& t) {
  if (!star(bivector, bivector).is_zero())
    throw math_error("formal rotor parameter requires a nilpotent bivector");
  PolyMv out = PolyMv::scalar(bivector.signature(), PolyScalar::constant(CRational(1)));
  out += bivector.scaled(t.scaled(CRational(Rational(1, 2))));
  return out;
}

// Multivector serialization: masks ascending, coefficients exact or float.
std::string multivector_to_json(const PolyMv& m);
std::string multivector_to_json(const RealMv& m);
PolyMv multivector_from_json(const SignaturePtr& sig, const std::string& text);

}  // namespace gastar
