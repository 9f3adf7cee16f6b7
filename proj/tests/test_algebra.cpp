#include "doctest.h"

#include <cmath>

#include "core/algebra.hpp"
#include "core/reports.hpp"

using namespace gastar;

TEST_CASE("so3 structure constants and killing pairing") {
  BivectorAlgebra a = so3_algebra();
  REQUIRE(a.size() == 3);
  int eps[3][3][3] = {};
  eps[0][1][2] = eps[1][2][0] = eps[2][0][1] = 1;
  eps[0][2][1] = eps[2][1][0] = eps[1][0][2] = -1;
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      for (size_t k = 0; k < 3; ++k)
        CHECK(a.c(i, j, k) == Rational(-eps[i][j][k]));
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      CHECK(a.killing[i][j] == (i == j ? Rational(-1) : Rational(0)));
  CHECK(structure_jacobi_ok(a));
  CHECK(structure_antisymmetric_ok(a));
}

TEST_CASE("a single generator is abelian") {
  BivectorAlgebra u1 = unitary_algebra(1);
  REQUIRE(u1.size() == 1);
  CHECK(u1.c(0, 0, 0).is_zero());
}

TEST_CASE("non-closed generator sets are reported") {
  auto sig = euclidean_signature(3);
  auto e = [&](int i) { return PolyMv::basis_vector(sig, i); };
  std::vector<PolyMv> gens = {wedge(e(0), e(1)), wedge(e(0), e(2))};
  CHECK_THROWS_AS(algebra_from_generators("partial", sig, gens, {"A", "B"}), math_error);
}

TEST_CASE("boost and rotation generators close with the stated duals") {
  for (bool nonstd : {true, false}) {
    BivectorAlgebra lor = lorentz_algebra(nonstd);
    REQUIRE(lor.size() == 6);
    CHECK(structure_jacobi_ok(lor));
    CHECK(structure_antisymmetric_ok(lor));
    PolyMv i4 = pseudoscalar<PolyScalar>(lor.sig);
    if (!nonstd) i4 = -i4;  // the metric swap flips the dual unit
    auto L = [&](size_t i) { return lor.generators[i]; };
    auto K = [&](size_t i) { return lor.generators[3 + i]; };
    auto bracket = [](const PolyMv& a, const PolyMv& b) { return star(a, b) - star(b, a); };
    int eps[3][3][3] = {};
    eps[0][1][2] = eps[1][2][0] = eps[2][0][1] = 1;
    eps[0][2][1] = eps[2][1][0] = eps[1][0][2] = -1;
    for (size_t i = 0; i < 3; ++i)
      for (size_t j = 0; j < 3; ++j) {
        PolyMv ll(lor.sig), lk(lor.sig), kk(lor.sig);
        for (size_t k = 0; k < 3; ++k)
          if (eps[i][j][k]) {
            ll += star(-i4, L(k)).scaled(Rational(eps[i][j][k]));
            lk += star(-i4, K(k)).scaled(Rational(eps[i][j][k]));
            kk += star(i4, L(k)).scaled(Rational(eps[i][j][k]));
          }
        CHECK(bracket(L(i), L(j)) == ll);
        CHECK(bracket(L(i), K(j)) == lk);
        CHECK(bracket(K(i), K(j)) == kk);
      }
  }
}

TEST_CASE("unitary and general-linear families close for n up to 3") {
  for (int n = 1; n <= 3; ++n) {
    BivectorAlgebra un = unitary_algebra(n);
    CHECK(un.size() == static_cast<size_t>(n * n));
    CHECK(structure_jacobi_ok(un));
    BivectorAlgebra gl = gl_algebra(n);
    CHECK(gl.size() == static_cast<size_t>(n * n));
    CHECK(structure_jacobi_ok(gl));
  }
}

TEST_CASE("unitary generators fix the phase bivector") {
  BivectorAlgebra u2 = unitary_algebra(2);
  PolyMv j = unitary_j(u2);
  for (const auto& g : u2.generators) CHECK(commutator(g, j).is_zero());
  CHECK(commutator(j, j).is_zero());
  UnitaryInvarianceReport rep = unitary_invariance_check(u2, {0.7});
  CHECK(rep.commutators_vanish);
  CHECK(rep.rotor_residual < 1e-12);
}

TEST_CASE("adjoint action") {
  BivectorAlgebra a = so3_algebra();
  auto to_real = [&](const PolyMv& m) {
    RealMv out(m.signature());
    for (const auto& [mask, c] : m.blades()) out.accumulate(mask, c.constant_value().re().to_double());
    return out;
  };
  RealMv b1 = to_real(a.generators[0]);
  RealMv b2 = to_real(a.generators[1]);
  RealMv b3 = to_real(a.generators[2]);

  RealMv ident = RealMv::scalar(b1.signature(), 1.0);
  CHECK((adjoint(ident, b2) - b2).max_abs() == 0.0);

  // ad via the commutator product: ad_{B1} B2 = -B3
  CHECK(ad(a.generators[0], a.generators[1]) == -a.generators[2]);

  Rng rng(101);
  for (int it = 0; it < 10; ++it) {
    RealMv gen = b1.scaled(rng.real(-1, 1)) + b2.scaled(rng.real(-1, 1)) + b3.scaled(rng.real(-1, 1));
    RealMv r = rotor_exp(gen, rng.real(-2, 2));
    RealMv x = b1.scaled(rng.real(-1, 1)) + b3.scaled(rng.real(-1, 1));
    // orbit invariant
    CHECK(std::fabs(norm_squared(adjoint(r, x)) - norm_squared(x)) < 1e-12);
    // homomorphism over the commutator product
    RealMv y = b2.scaled(rng.real(-1, 1)) + b3.scaled(rng.real(-1, 1));
    RealMv lhs = adjoint(r, commutator(x, y));
    RealMv rhs = commutator(adjoint(r, x), adjoint(r, y));
    CHECK((lhs - rhs).max_abs() < 1e-12);
  }
  // left action: Ad_{R R'} = Ad_R Ad_R'
  RealMv r1 = rotor_exp(b1, 0.6), r2 = rotor_exp(b3, -1.1);
  RealMv composed = star(r1, r2);
  CHECK((adjoint(composed, b2) - adjoint(r1, adjoint(r2, b2))).max_abs() < 1e-12);
}

TEST_CASE("coadjoint action pairs against the adjoint one") {
  BivectorAlgebra a = so3_algebra();
  auto to_real = [&](const PolyMv& m) {
    RealMv out(m.signature());
    for (const auto& [mask, c] : m.blades()) out.accumulate(mask, c.constant_value().re().to_double());
    return out;
  };
  Rng rng(103);
  for (int it = 0; it < 10; ++it) {
    RealMv b = to_real(a.generators[0]).scaled(rng.real(-1, 1)) +
               to_real(a.generators[1]).scaled(rng.real(-1, 1));
    RealMv theta = to_real(a.generators[1]).scaled(rng.real(-1, 1)) +
                   to_real(a.generators[2]).scaled(rng.real(-1, 1));
    RealMv r = rotor_exp(to_real(a.generators[2]), rng.real(-2, 2));
    // <reverse(B) . Ad*_R Theta> = <reverse(Ad_R B) . Theta>
    CHECK(pairing(b, coadjoint(r, theta)) == doctest::Approx(pairing(adjoint(r, b), theta)).epsilon(1e-12));
  }
}

TEST_CASE("induced fields anti-represent the bivector algebra") {
  BivectorAlgebra a = so3_algebra();
  auto reg = make_registry({"x1", "x2", "x3"});
  std::vector<std::string> xs = {"x1", "x2", "x3"};
  // B3 . x at the point (1,0,0): along -e2
  PolyField f3 = induced_field(a.generators[2], reg, xs);
  std::map<std::string, CRational> at{{"x1", CRational(1)}, {"x2", CRational(0)}, {"x3", CRational(0)}};
  CHECK(f3.components[0].eval(at).is_zero());
  CHECK(f3.components[1].eval(at) == CRational(Rational(-1)));
  // zero point maps to zero field value
  std::map<std::string, CRational> origin{{"x1", CRational(0)}, {"x2", CRational(0)}, {"x3", CRational(0)}};
  for (const auto& c : f3.components) CHECK(c.eval(origin).is_zero());
  // [A.x, B.x]_JLB = -(A x B).x on the full basis
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) {
      PolyField fi = induced_field(a.generators[i], reg, xs);
      PolyField fj = induced_field(a.generators[j], reg, xs);
      PolyField lhs = field_jacobi_lie(fi, fj, xs);
      PolyField rhs = induced_field(commutator(a.generators[i], a.generators[j]), reg, xs);
      for (size_t k = 0; k < 3; ++k) CHECK(lhs.components[k] == -rhs.components[k]);
    }
}

TEST_CASE("linear bracket on the dual coordinates") {
  BivectorAlgebra a = so3_algebra();
  auto reg = make_registry({"t1", "t2", "t3"});
  std::vector<std::string> ts = {"t1", "t2", "t3"};
  auto t = [&](int i) { return PolyScalar::variable(reg, ts[static_cast<size_t>(i)]); };
  CHECK(lie_poisson_bracket(t(0), t(1), a, reg, ts) == -t(2));
  Rng rng(107);
  auto random_f = [&]() {
    PolyScalar out = PolyScalar::constant(reg, CRational(0));
    for (int k = 0; k < 3; ++k) {
      PolyScalar mono = PolyScalar::constant(reg, CRational(rng.rational(3, 2)));
      int deg = rng.range(0, 3);
      for (int d = 0; d < deg; ++d) mono *= t(rng.range(0, 2));
      out += mono;
    }
    return out;
  };
  PolyScalar casimir = t(0) * t(0) + t(1) * t(1) + t(2) * t(2);
  for (int it = 0; it < 10; ++it) {
    PolyScalar f = random_f(), g = random_f(), h = random_f();
    CHECK(lie_poisson_bracket(f, f, a, reg, ts).is_zero());
    CHECK(lie_poisson_bracket(f, g, a, reg, ts) == -lie_poisson_bracket(g, f, a, reg, ts));
    CHECK(lie_poisson_bracket(casimir, g, a, reg, ts).is_zero());
    // Jacobi identity
    PolyScalar jac = lie_poisson_bracket(lie_poisson_bracket(f, g, a, reg, ts), h, a, reg, ts) +
                     lie_poisson_bracket(lie_poisson_bracket(g, h, a, reg, ts), f, a, reg, ts) +
                     lie_poisson_bracket(lie_poisson_bracket(h, f, a, reg, ts), g, a, reg, ts);
    CHECK(jac.is_zero());
  }
}
