#include "core/rational.hpp"

#include <cmath>

namespace gastar {

namespace {

using i128 = __int128;

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw math_error("rational overflow (add)");
  return r;
}

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw math_error("rational overflow (mul)");
  return r;
}

i128 iabs(i128 a) { return a < 0 ? -a : a; }

i128 gcd128(i128 a, i128 b) {
  a = iabs(a);
  b = iabs(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string i128_to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  // -2^127 cannot occur: normalized values come from checked ops on smaller inputs.
  if (neg) v = -v;
  char buf[64];
  int n = 0;
  while (v > 0) {
    buf[n++] = static_cast<char>('0' + static_cast<int>(v % 10));
    v /= 10;
  }
  std::string out;
  if (neg) out.push_back('-');
  while (n > 0) out.push_back(buf[--n]);
  return out;
}

i128 i128_from_string(const std::string& s, size_t begin, size_t end) {
  if (begin >= end) throw math_error("empty integer literal");
  bool neg = false;
  size_t k = begin;
  if (s[k] == '-' || s[k] == '+') {
    neg = s[k] == '-';
    ++k;
  }
  if (k >= end) throw math_error("bad integer literal: " + s);
  i128 v = 0;
  for (; k < end; ++k) {
    if (s[k] < '0' || s[k] > '9') throw math_error("bad integer literal: " + s);
    v = checked_add(checked_mul(v, 10), s[k] - '0');
  }
  return neg ? -v : v;
}

}  // namespace

Rational::Rational(long long n, long long d) : num_(n), den_(d) {
  if (d == 0) throw math_error("rational with zero denominator");
  normalize();
}

Rational::Rational(i128 n, i128 d, int) : num_(n), den_(d) {
  if (d == 0) throw math_error("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  i128 g = gcd128(num_, den_);
  num_ /= g;
  den_ /= g;
}

Rational Rational::parse(const std::string& text) {
  size_t slash = text.find('/');
  if (slash == std::string::npos)
    return Rational(i128_from_string(text, 0, text.size()), i128(1), 0);
  return Rational(i128_from_string(text, 0, slash),
                  i128_from_string(text, slash + 1, text.size()), 0);
}

Rational Rational::operator-() const { return Rational(-num_, den_, 0); }

Rational Rational::operator+(const Rational& o) const {
  i128 g = gcd128(den_, o.den_);
  i128 dl = den_ / g;
  i128 dr = o.den_ / g;
  i128 n = checked_add(checked_mul(num_, dr), checked_mul(o.num_, dl));
  i128 d = checked_mul(den_, dr);
  return Rational(n, d, 0);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  i128 g1 = gcd128(num_, o.den_);
  i128 g2 = gcd128(o.num_, den_);
  i128 n = checked_mul(num_ / g1, o.num_ / g2);
  i128 d = checked_mul(den_ / g2, o.den_ / g1);
  return Rational(n, d, 0);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw math_error("rational division by zero");
  return *this * o.inverse();
}

bool Rational::operator<(const Rational& o) const {
  // Cross-multiply with overflow checks.
  return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
}

Rational Rational::abs() const { return num_ < 0 ? -*this : *this; }

Rational Rational::inverse() const {
  if (num_ == 0) throw math_error("inverse of zero rational");
  return Rational(den_, num_, 0);
}

bool Rational::sqrt_exact(Rational& root) const {
  i128 n = iabs(num_);
  i128 d = den_;
  auto isqrt = [](i128 v) {
    if (v < 0) return i128(-1);
    i128 r = static_cast<i128>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
  };
  i128 rn = isqrt(n);
  i128 rd = isqrt(d);
  if (rn * rn != n || rd * rd != d) return false;
  root = Rational(rn, rd, 0);
  return true;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::str() const {
  if (den_ == 1) return i128_to_string(num_);
  return i128_to_string(num_) + "/" + i128_to_string(den_);
}

CRational CRational::operator/(const CRational& o) const {
  Rational n = o.re_ * o.re_ + o.im_ * o.im_;
  if (n.is_zero()) throw math_error("division by zero gaussian rational");
  CRational c = *this * o.conj();
  return {c.re_ / n, c.im_ / n};
}

std::string CRational::str() const {
  if (im_.is_zero()) return re_.str();
  std::string im_part = (im_.is_one() ? "i" : im_.str() + "*i");
  if (re_.is_zero()) return im_part;
  if (im_.sign() > 0) return re_.str() + "+" + im_part;
  return re_.str() + "-" + ((-im_).is_one() ? "i" : (-im_).str() + "*i");
}

}  // namespace gastar
