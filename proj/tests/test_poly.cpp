#include "doctest.h"

#include "core/poly.hpp"
#include "core/reports.hpp"

using namespace gastar;

namespace {

RegistryPtr qp_registry() { return make_registry({"q", "p", "hbar"}); }

PolyScalar random_poly(Rng& rng, const RegistryPtr& reg, int max_degree = 3) {
  PolyScalar out = PolyScalar::constant(reg, CRational(0));
  int terms = rng.range(1, 4);
  for (int t = 0; t < terms; ++t) {
    PolyScalar mono = PolyScalar::constant(reg, CRational(rng.rational(4, 3), rng.rational(2, 2)));
    int deg = rng.range(0, max_degree);
    for (int k = 0; k < deg; ++k)
      mono *= PolyScalar::variable(reg, reg->name(static_cast<size_t>(rng.range(0, 1))));
    out += mono;
  }
  return out;
}

}  // namespace

TEST_CASE("products of named variables") {
  auto reg = qp_registry();
  auto q = PolyScalar::variable(reg, "q");
  auto p = PolyScalar::variable(reg, "p");
  CHECK((q * p).str() == "q*p");
  CHECK((q + p) * (q - p) == q * q - p * p);
  // (i hbar / 2)^2 = -hbar^2/4
  auto ih2 = PolyScalar::variable(reg, "hbar").scaled(CRational(Rational(0), Rational(1, 2)));
  CHECK(ih2 * ih2 ==
        (PolyScalar::variable(reg, "hbar") * PolyScalar::variable(reg, "hbar"))
            .scaled(CRational(Rational(-1, 4))));
}

TEST_CASE("formal derivatives") {
  auto reg = qp_registry();
  auto q = PolyScalar::variable(reg, "q");
  auto p = PolyScalar::variable(reg, "p");
  auto hbar = PolyScalar::variable(reg, "hbar");
  CHECK((q * q * p).diff("q") == (q * p).scaled(CRational(2)));
  CHECK(q.diff("p").is_zero());
  CHECK((hbar * q).scaled(CRational::i()).diff("hbar") == q.scaled(CRational::i()));
  CHECK_THROWS_AS(q.diff("nope"), math_error);
  // product rule on random polynomials
  Rng rng(7);
  for (int it = 0; it < 30; ++it) {
    PolyScalar f = random_poly(rng, reg), g = random_poly(rng, reg);
    CHECK((f * g).diff("q") == f.diff("q") * g + f * g.diff("q"));
  }
}

TEST_CASE("evaluation") {
  auto reg = qp_registry();
  auto q = PolyScalar::variable(reg, "q");
  auto p = PolyScalar::variable(reg, "p");
  std::map<std::string, CRational> at{{"q", CRational(3)}, {"p", CRational(4)}};
  CHECK((q * q + p * p).eval(at) == CRational(25));
  CHECK(PolyScalar::variable(reg, "hbar").eval({{"hbar", CRational(0)}}).is_zero());
  CHECK(q.scaled(CRational::i()).eval({{"q", CRational(2)}}) ==
        CRational(Rational(0), Rational(2)));
  CHECK_THROWS_AS((q * p).eval({{"q", CRational(1)}}), math_error);
}

TEST_CASE("registry discipline") {
  auto reg1 = make_registry({"x"});
  auto reg2 = make_registry({"x"});
  auto a = PolyScalar::variable(reg1, "x");
  auto b = PolyScalar::variable(reg2, "x");
  CHECK_THROWS_AS(a * b, math_error);
  // bare constants lift into any registry
  CHECK((a + PolyScalar::constant(CRational(2))).eval({{"x", CRational(1)}}) == CRational(3));
}

TEST_CASE("ring axioms on random polynomials") {
  auto reg = qp_registry();
  Rng rng(11);
  for (int it = 0; it < 40; ++it) {
    PolyScalar f = random_poly(rng, reg), g = random_poly(rng, reg), h = random_poly(rng, reg);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f * g == g * f);
    CHECK(f.diff("q").diff("p") == f.diff("p").diff("q"));
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  auto reg = qp_registry();
  Rng rng(13);
  for (int it = 0; it < 25; ++it) {
    PolyScalar f = random_poly(rng, reg), g = random_poly(rng, reg);
    std::map<std::string, CRational> at{{"q", CRational(rng.rational(5, 3))},
                                        {"p", CRational(rng.rational(5, 3))},
                                        {"hbar", CRational(rng.rational(2, 2))}};
    CHECK((f * g).eval(at) == f.eval(at) * g.eval(at));
    CHECK((f + g).eval(at) == f.eval(at) + g.eval(at));
  }
}

TEST_CASE("monomial division and substitution") {
  auto reg = qp_registry();
  auto q = PolyScalar::variable(reg, "q");
  auto hbar = PolyScalar::variable(reg, "hbar");
  PolyScalar f = (hbar * q).scaled(CRational::i()) + (hbar * hbar).scaled(CRational(3));
  PolyScalar divided = f.divide_by_monomial(CRational::i(), "hbar", 1);
  CHECK(divided == q + hbar.scaled(CRational(Rational(0), Rational(-3))));
  CHECK(divided.substitute("hbar", Rational(0)) == q);
  CHECK_THROWS_AS(q.divide_by_monomial(CRational(1), "hbar", 1), math_error);
}

TEST_CASE("canonical json round trip is bit exact") {
  auto reg = qp_registry();
  Rng rng(17);
  for (int it = 0; it < 10; ++it) {
    PolyScalar f = random_poly(rng, reg, 4);
    std::string text = f.to_json();
    PolyScalar back = PolyScalar::from_json(text);
    CHECK(back.to_json() == text);
    // same polynomial under its own registry
    CHECK(back.to_json() == f.to_json());
  }
  CHECK(PolyScalar::from_json(PolyScalar().to_json()).is_zero());
}
