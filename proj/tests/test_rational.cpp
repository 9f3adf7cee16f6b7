#include "doctest.h"

#include "core/rational.hpp"

using namespace gastar;

TEST_CASE("rational arithmetic stays reduced") {
  Rational a(2, 4);
  CHECK(a == Rational(1, 2));
  CHECK((a + a) == Rational(1));
  CHECK((a * Rational(2, 3)) == Rational(1, 3));
  CHECK((Rational(1, 3) - Rational(1, 3)).is_zero());
  CHECK((Rational(-5, 10)).str() == "-1/2");
  CHECK(Rational(7).str() == "7");
}

TEST_CASE("rational parse round trip") {
  for (const char* text : {"0", "5", "-3", "22/7", "-1048576/3", "170141183460469231731687303715884105/7"}) {
    Rational r = Rational::parse(text);
    CHECK(Rational::parse(r.str()) == r);
  }
  CHECK_THROWS_AS(Rational::parse("1/0"), math_error);
  CHECK_THROWS_AS(Rational::parse("abc"), math_error);
}

TEST_CASE("rational division and ordering") {
  CHECK(Rational(3, 4) / Rational(3, 2) == Rational(1, 2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), math_error);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(1, 3));
}

TEST_CASE("overflow raises instead of wrapping") {
  Rational big = Rational::parse("170141183460469231731687303715884105/1");
  CHECK_THROWS_AS(big * big * big, math_error);
}

TEST_CASE("exact square roots") {
  Rational root;
  CHECK(Rational(9, 4).sqrt_exact(root));
  CHECK(root == Rational(3, 2));
  CHECK(Rational(-16).sqrt_exact(root));  // |.| is used
  CHECK(root == Rational(4));
  CHECK_FALSE(Rational(2).sqrt_exact(root));
}

TEST_CASE("gaussian rational field operations") {
  CRational i = CRational::i();
  CHECK((i * i) == CRational(Rational(-1)));
  CRational z(Rational(1, 2), Rational(-3, 4));
  CHECK((z * z.conj()).im().is_zero());
  CHECK((z / z) == CRational(Rational(1)));
  CHECK_THROWS_AS(z / CRational(), math_error);
  CHECK(CRational(Rational(0), Rational(1, 2)).str() == "1/2*i");
}
