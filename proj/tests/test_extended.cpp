#include "doctest.h"

#include "core/extended.hpp"
#include "core/reports.hpp"

using namespace gastar;

namespace {

PolyScalar oscillator(const ExtendedPhaseSpace& eps) {
  return (eps.z(0) * eps.z(0) + eps.z(1) * eps.z(1)).scaled(CRational(Rational(1, 2)));
}

PolyScalar random_h(Rng& rng, const ExtendedPhaseSpace& eps, int max_degree = 4) {
  PolyScalar h = eps.constant(CRational(0));
  int terms = rng.range(1, 4);
  for (int t = 0; t < terms; ++t) {
    PolyScalar mono = eps.constant(CRational(rng.rational(3, 2)));
    int deg = rng.range(0, max_degree);
    for (int k = 0; k < deg; ++k) mono *= eps.z(rng.range(0, eps.n() - 1));
    h += mono;
  }
  return h;
}

}  // namespace

TEST_CASE("extended canonical relations") {
  ExtendedPhaseSpace eps(2);
  const int n = eps.n();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      PolyMv zy = extended_bracket(eps.scalar(eps.z(a)), eps.scalar(eps.y(b)), eps);
      PolyMv zl = extended_bracket(eps.zeta(a), eps.lambda(b), eps);
      if (a == b) {
        CHECK(zy == eps.scalar(eps.constant(CRational(1))));
        CHECK(zl == eps.scalar(eps.constant(CRational(Rational(0), Rational(-1)))));
      } else {
        CHECK(zy.is_zero());
        CHECK(zl.is_zero());
      }
      CHECK(extended_bracket(eps.scalar(eps.z(a)), eps.scalar(eps.z(b)), eps).is_zero());
      CHECK(extended_bracket(eps.scalar(eps.y(a)), eps.scalar(eps.y(b)), eps).is_zero());
      CHECK(extended_bracket(eps.zeta(a), eps.zeta(b), eps).is_zero());
      CHECK(extended_bracket(eps.lambda(a), eps.lambda(b), eps).is_zero());
    }
  }
}

TEST_CASE("combined product expansions") {
  ExtendedPhaseSpace eps(1);
  auto z0 = eps.scalar(eps.z(0));
  auto y0 = eps.scalar(eps.y(0));
  // z * y - y * z = i
  CHECK(extended_star(z0, y0, eps) - extended_star(y0, z0, eps) ==
        eps.scalar(eps.constant(CRational::i())));
  // zeta * lambda + lambda * zeta = 1 (both half contractions)
  CHECK(extended_star(eps.zeta(0), eps.lambda(0), eps) +
            extended_star(eps.lambda(0), eps.zeta(0), eps) ==
        eps.scalar(eps.constant(CRational(1))));
  // unit element
  Rng rng(79);
  PolyMv f = eps.zeta(0).scaled(random_h(rng, eps, 2)) + eps.scalar(random_h(rng, eps, 3));
  CHECK(extended_star(f, eps.scalar(eps.constant(CRational(1))), eps) == f);
}

TEST_CASE("extended product is associative on mixed elements") {
  ExtendedPhaseSpace eps(1);
  Rng rng(83);
  for (int it = 0; it < 6; ++it) {
    PolyMv a = eps.zeta(rng.range(0, 1)).scaled(random_h(rng, eps, 2)) +
               eps.scalar(eps.y(rng.range(0, 1)));
    PolyMv b = eps.lambda(rng.range(0, 1)).scaled(eps.y(rng.range(0, 1))) +
               eps.scalar(random_h(rng, eps, 2));
    PolyMv c = wedge(eps.zeta(0), eps.lambda(rng.range(0, 1))) + eps.scalar(random_h(rng, eps, 2));
    CHECK(extended_star(extended_star(a, b, eps), c, eps) ==
          extended_star(a, extended_star(b, c, eps), eps));
  }
}

TEST_CASE("bracket requires definite parity") {
  ExtendedPhaseSpace eps(1);
  PolyMv mixed = eps.zeta(0) + eps.scalar(eps.z(0));
  CHECK_THROWS_AS(extended_bracket(mixed, eps.zeta(0), eps), math_error);
}

TEST_CASE("extended Hamiltonian of the oscillator") {
  ExtendedPhaseSpace eps(1);
  PolyMv he = extended_hamiltonian(oscillator(eps), eps);
  // y_q p - y_p q + i zeta_q lambda^p - i zeta_p lambda^q
  PolyMv expect(eps.fermionic_signature());
  expect += eps.scalar(eps.y(0) * eps.z(1) - eps.y(1) * eps.z(0));
  expect += wedge(eps.zeta(0), eps.lambda(1)).scaled(eps.constant(CRational::i()));
  expect += wedge(eps.zeta(1), eps.lambda(0)).scaled(eps.constant(-CRational::i()));
  CHECK(he == expect);
  CHECK(extended_hamiltonian(eps.constant(CRational(0)), eps).is_zero());

  // free particle: y_q p + i zeta_q lambda^q-sector term from the Hessian
  PolyScalar free_h = (eps.z(1) * eps.z(1)).scaled(CRational(Rational(1, 2)));
  PolyMv he_free = extended_hamiltonian(free_h, eps);
  PolyMv expect_free(eps.fermionic_signature());
  expect_free += eps.scalar(eps.y(0) * eps.z(1));
  expect_free += wedge(eps.zeta(0), eps.lambda(1)).scaled(eps.constant(CRational::i()));
  CHECK(he_free == expect_free);
}

TEST_CASE("equations of motion reproduce the displayed families") {
  ExtendedPhaseSpace eps(1);
  PolyScalar h = oscillator(eps);
  PolyMv he = extended_hamiltonian(h, eps);
  ExtendedEom eom = extended_equations_of_motion(he, eps);
  // dq = p, dp = -q
  CHECK(eom.z_dot[0] == eps.scalar(eps.z(1)));
  CHECK(eom.z_dot[1] == eps.scalar(-eps.z(0)));
  // dzeta_q = -J^{jk} H_kq zeta_j = zeta_p; dzeta_p = -zeta_q
  CHECK(eom.zeta_dot[0] == eps.zeta(1));
  CHECK(eom.zeta_dot[1] == -eps.zeta(0));
  // dlambda^q = lambda^p; dlambda^p = -lambda^q
  CHECK(eom.lambda_dot[0] == eps.lambda(1));
  CHECK(eom.lambda_dot[1] == -eps.lambda(0));
  // dy_q = y_p, dy_p = -y_q for the oscillator (third derivatives vanish)
  CHECK(eom.y_dot[0] == eps.scalar(eps.y(1)));
  CHECK(eom.y_dot[1] == eps.scalar(-eps.y(0)));

  // general H: the bracket route equals the displayed derivative route,
  // including the ghost correction in the y equation
  Rng rng(89);
  for (int it = 0; it < 4; ++it) {
    PolyScalar hr = random_h(rng, eps);
    PolyMv her = extended_hamiltonian(hr, eps);
    ExtendedEom got = extended_equations_of_motion(her, eps);
    ExtendedEom expect = expected_equations_of_motion(hr, eps);
    for (int a = 0; a < eps.n(); ++a) {
      CHECK(got.z_dot[static_cast<size_t>(a)] == expect.z_dot[static_cast<size_t>(a)]);
      CHECK(got.y_dot[static_cast<size_t>(a)] == expect.y_dot[static_cast<size_t>(a)]);
      CHECK(got.zeta_dot[static_cast<size_t>(a)] == expect.zeta_dot[static_cast<size_t>(a)]);
      CHECK(got.lambda_dot[static_cast<size_t>(a)] == expect.lambda_dot[static_cast<size_t>(a)]);
    }
  }
}

TEST_CASE("ghost charges generate conserved nilpotent symmetries") {
  ExtendedPhaseSpace eps(1);
  BrstReport rep = brst_check(oscillator(eps), eps);
  CHECK(rep.all());
  BrstReport zero = brst_check(eps.constant(CRational(0)), eps);
  CHECK(zero.all());
  // cubic Hamiltonian
  PolyScalar cubic = eps.z(0) * eps.z(0) * eps.z(1) + eps.z(1) * eps.z(1) * eps.z(1) - eps.z(0);
  CHECK(brst_check(cubic, eps).all());
  // random polynomials across both degrees of freedom
  Rng rng(97);
  for (int it = 0; it < 4; ++it) {
    ExtendedPhaseSpace eps2(2);
    CHECK(brst_check(random_h(rng, eps2), eps2).all());
  }
}

TEST_CASE("ghost bivector reproduces the basis-vector flow") {
  ExtendedPhaseSpace eps(1);
  PolyScalar h = oscillator(eps);
  PolyMv hp = passive_hamiltonian_from(h, eps);
  CHECK(passive_hamiltonian_check(h, hp, eps).ok);

  PolyScalar hqp = eps.z(0) * eps.z(1);
  CHECK(passive_hamiltonian_check(hqp, passive_hamiltonian_from(hqp, eps), eps).ok);

  CHECK(passive_hamiltonian_check(eps.constant(CRational(0)), PolyMv(eps.fermionic_signature()), eps).ok);

  // a wrong candidate is flagged
  PolyMv wrong = hp.scaled(Rational(2));
  CHECK_FALSE(passive_hamiltonian_check(h, wrong, eps).ok);
}

TEST_CASE("optional hbar deformation keeps the canonical relations") {
  ExtendedPhaseSpace eps(1, true);
  PolyMv zy = extended_bracket(eps.scalar(eps.z(0)), eps.scalar(eps.y(0)), eps);
  CHECK(zy == eps.scalar(eps.constant(CRational(1))));
  CHECK(brst_check(oscillator(eps), eps).all());
}

TEST_CASE("graded jacobi identity for the extended bracket") {
  ExtendedPhaseSpace eps(1);
  Rng rng(151);
  auto random_even = [&]() {
    PolyMv out = eps.scalar(random_h(rng, eps, 2));
    out += wedge(eps.zeta(rng.range(0, 1)), eps.lambda(rng.range(0, 1)))
               .scaled(eps.y(rng.range(0, 1)));
    return out;
  };
  auto random_odd = [&]() {
    PolyMv out = eps.zeta(rng.range(0, 1)).scaled(random_h(rng, eps, 2));
    out += eps.lambda(rng.range(0, 1)).scaled(eps.y(rng.range(0, 1)));
    return out;
  };
  auto parity_of = [](const PolyMv& m) {
    int p = 0;
    m.has_definite_parity(p);
    return p;
  };
  for (int it = 0; it < 6; ++it) {
    PolyMv f = (it % 2) ? random_odd() : random_even();
    PolyMv g = (it % 3) ? random_odd() : random_even();
    PolyMv h = ((it + 1) % 2) ? random_odd() : random_even();
    int pf = parity_of(f), pg = parity_of(g), ph = parity_of(h);
    auto sgn = [](int e) { return (e & 1) ? Rational(-1) : Rational(1); };
    PolyMv total =
        extended_bracket(f, extended_bracket(g, h, eps), eps).scaled(sgn(pf * ph)) +
        extended_bracket(g, extended_bracket(h, f, eps), eps).scaled(sgn(pg * pf)) +
        extended_bracket(h, extended_bracket(f, g, eps), eps).scaled(sgn(ph * pg));
    CHECK(total.is_zero());
  }
}
