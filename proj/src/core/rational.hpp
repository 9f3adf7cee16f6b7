#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gastar {

struct math_error : std::runtime_error {
  explicit math_error(const std::string& what) : std::runtime_error(what) {}
};

// Exact rational on 128-bit integers; denominator > 0, always reduced.
// Overflow throws math_error instead of wrapping silently.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d);

  static Rational parse(const std::string& text);  // "n" or "n/d"

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  int sign() const { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }
  Rational abs() const;
  Rational inverse() const;

  bool is_integer() const { return den_ == 1; }
  // True when |this| is the square of a rational; root receives the value.
  bool sqrt_exact(Rational& root) const;

  double to_double() const;
  std::string str() const;

 private:
  __int128 num_;
  __int128 den_;

  Rational(__int128 n, __int128 d, int);  // raw, will normalize
  void normalize();
  friend struct RationalRaw;
};

// Gaussian rational a + b*i with exact components.
class CRational {
 public:
  CRational() = default;
  CRational(Rational re) : re_(re) {}
  CRational(long long re) : re_(re) {}
  CRational(Rational re, Rational im) : re_(re), im_(im) {}
  static CRational i() { return CRational(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  CRational operator-() const { return {-re_, -im_}; }
  CRational operator+(const CRational& o) const { return {re_ + o.re_, im_ + o.im_}; }
  CRational operator-(const CRational& o) const { return {re_ - o.re_, im_ - o.im_}; }
  CRational operator*(const CRational& o) const {
    return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
  }
  CRational operator/(const CRational& o) const;
  CRational& operator+=(const CRational& o) { return *this = *this + o; }
  CRational& operator-=(const CRational& o) { return *this = *this - o; }
  CRational& operator*=(const CRational& o) { return *this = *this * o; }

  bool operator==(const CRational& o) const { return re_ == o.re_ && im_ == o.im_; }
  bool operator!=(const CRational& o) const { return !(*this == o); }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }
  CRational conj() const { return {re_, -im_}; }

  std::string str() const;  // "a", "b*i" or "a+b*i"

 private:
  Rational re_;
  Rational im_;
};

}  // namespace gastar
