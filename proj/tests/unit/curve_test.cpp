#include <doctest.h>

#include <random>

#include "ecscan/curve.hpp"
#include "ecscan/tables.hpp"
#include "oracles.hpp"

using namespace ecscan;

namespace {

const Curve kE90 = Curve::parse("[0,0,0,-90,0]");

RationalPoint pt(const char* s) { return RationalPoint::parse(s); }

bool canonical(const RationalPoint& P) {
  if (P.is_identity()) return true;
  Integer g, ac = P.A() * P.C();
  mpz_gcd(g.get_mpz_t(), P.B().get_mpz_t(), ac.get_mpz_t());
  return P.B() >= 1 && g == 1;
}

}  // namespace

TEST_SUITE("curve") {

TEST_CASE("discriminants of reference curves") {
  CHECK(discriminant(Curve::parse("[0,0,1,-199,1092]")) == -11022011);
  CHECK(discriminant(Curve::parse("[0,0,0,-412,3316]")) == -274400000);
  CHECK(discriminant(Curve::parse("[0,1,0,-648,0]")) == Integer("17420977152"));
  CHECK(discriminant(Curve::parse("[0,0,0,150,0]")) == -216000000);
}

TEST_CASE("every tabulated |disc| matches") {
  auto fx = tables::Fixtures::load(tables::default_fixture_path());
  int n = 0;
  for (const auto& row : fx.rows()) {
    if (!row.abs_disc) continue;
    ++n;
    CHECK_MESSAGE(abs(row.curve->delta()) == *row.abs_disc, row.curve->to_string());
  }
  CHECK(n == 47);
}

TEST_CASE("cached invariants are consistent") {
  for (const char* s : {"[0,0,1,-199,1092]", "[1,-1,1,-42,105]", "[1,0,0,-59852395,185731807025]", "[0,1,1,-2,0]"}) {
    Curve E = Curve::parse(s);
    CHECK(4 * E.b8() == E.b2() * E.b6() - E.b4() * E.b4());
    CHECK(E.j() * Rational(E.delta()) == Rational(E.c4() * E.c4() * E.c4()));
    CHECK(1728 * E.delta() == E.c4() * E.c4() * E.c4() - E.c6() * E.c6());
  }
}

TEST_CASE("singular and malformed curves are rejected") {
  CHECK_THROWS_AS(Curve::parse("[0,0,0,0,0]"), DomainError);
  CHECK_THROWS_AS(Curve::parse("[0,0,0,-3,2]"), DomainError);  // node at x = 1
  CHECK_THROWS_AS(Curve::parse("[0,0,0,1]"), DomainError);
  CHECK_THROWS_AS(Curve::parse("[0,0,x,1,1]"), DomainError);
}

TEST_CASE("contains") {
  CHECK(contains(Curve::parse("[0,0,0,-1681,0]"), pt("-9,120")));
  CHECK(contains(kE90, RationalPoint::from_abc(49, 2, -217)));
  CHECK(contains(kE90, pt("49/4,-217/8")));
  CHECK_FALSE(contains(kE90, pt("1,1")));
  CHECK(contains(kE90, RationalPoint::identity()));
}

TEST_CASE("point shape is enforced") {
  CHECK_THROWS_AS(RationalPoint::from_abc(2, 2, 3), DomainError);   // gcd(B, AC) = 2
  CHECK_THROWS_AS(RationalPoint::from_abc(1, 0, 1), DomainError);
  CHECK_THROWS_AS(pt("1/2,1/3"), DomainError);                        // 2 is not a square
  CHECK_THROWS_AS(pt("1/4,1/3"), DomainError);                        // 3 != 2^3
  RationalPoint P = pt("49/4,-217/8");
  CHECK(P.A() == 49);
  CHECK(P.B() == 2);
  CHECK(P.C() == -217);
}

TEST_CASE("standardized shape") {
  CHECK(is_standardized_shape(Curve::parse("[1,-1,1,-42,105]")));
  CHECK(is_standardized_shape(Curve::parse("[0,0,0,-28,52]")));
  CHECK_FALSE(is_standardized_shape(Curve::parse("[2,0,0,-1,1]")));
}

TEST_CASE("negation") {
  CHECK(negate(kE90, pt("-6,18")) == pt("-6,-18"));
  CHECK(negate(kE90, RationalPoint::identity()).is_identity());
  Curve E = Curve::parse("[0,0,1,-7,6]");
  CHECK(negate(E, pt("0,2")) == pt("0,-3"));
  CHECK(add(E, pt("0,2"), negate(E, pt("0,2"))).is_identity());
}

TEST_CASE("addition examples") {
  CHECK(add(kE90, pt("-9,9"), pt("-6,18")) == pt("24,-108"));
  CHECK(add(kE90, pt("-9,9"), RationalPoint::identity()) == pt("-9,9"));
  CHECK(add(kE90, pt("-6,18"), pt("-6,-18")).is_identity());
  CHECK(add(kE90, pt("0,0"), pt("0,0")).is_identity());  // 2-torsion
}

TEST_CASE("scalar multiplication examples") {
  CHECK(scalar_mul(kE90, 2, pt("-6,18")) == pt("49/4,-217/8"));
  CHECK(scalar_mul(kE90, 0, pt("-6,18")).is_identity());
  CHECK(scalar_mul(kE90, 1, pt("-6,18")) == pt("-6,18"));
  for (int n = 1; n <= 12; ++n)
    CHECK(scalar_mul(kE90, -n, pt("-9,9")) == negate(kE90, scalar_mul(kE90, n, pt("-9,9"))));
}

TEST_CASE("group law agrees with the affine oracle") {
  struct Case {
    const char* curve;
    std::vector<const char*> gens;
  };
  const std::vector<Case> cases{{"[0,0,1,-7,6]", {"-2,3", "-1,3", "0,2"}},
                                {"[1,-1,0,-16,28]", {"-3,8", "-2,8", "-1,7"}},
                                {"[1,0,1,-12,14]", {"12,-47", "-1,5"}},
                                {"[0,0,0,-90,0]", {"-9,9", "-6,18"}}};
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-7, 7);
  for (const auto& c : cases) {
    Curve E = Curve::parse(c.curve);
    auto a = oracle::coefficients(E);
    std::vector<RationalPoint> gens;
    for (auto g : c.gens) gens.push_back(pt(g));
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<std::int64_t> k;
      oracle::AffinePoint want;
      for (std::size_t i = 0; i < gens.size(); ++i) {
        k.push_back(coeff(rng));
        want = oracle::add(a, want, oracle::multiple(a, static_cast<long>(k.back()), oracle::affine(gens[i])));
      }
      RationalPoint got = combination(E, gens, k);
      CHECK(oracle::affine(got) == want);
      CHECK(contains(E, got));
      CHECK(canonical(got));
      CHECK(oracle::on_curve(a, want));
    }
  }
}

TEST_CASE("add_advance matches add along long rows") {
  Curve E = Curve::parse("[0,0,1,-199,1092]");
  RationalPoint P = pt("-13,38"), Q = pt("-6,45");
  for (std::int64_t m : {1, 7, -23}) {
    RationalPoint prev = scalar_mul(E, m, P);
    RationalPoint cur = add(E, prev, Q);
    for (int n = 2; n < 60; ++n) {
      RationalPoint next = add_advance(E, cur, Q, prev);
      CHECK(next == add(E, cur, Q));
      prev = cur;
      cur = next;
    }
    CHECK(cur == combination(E, {P, Q}, {m, 59}));
  }
  // A misleading hint only costs time.
  RationalPoint R = scalar_mul(E, 9, P);
  CHECK(add_advance(E, R, Q, scalar_mul(E, 4, Q)) == add(E, R, Q));
}

TEST_CASE("doubling through the tangent equals P + P of the oracle") {
  Curve E = Curve::parse("[1,-1,1,-27,75]");
  auto a = oracle::coefficients(E);
  RationalPoint P = pt("11,-38");
  RationalPoint cur = P;
  for (int i = 0; i < 6; ++i) {
    auto want = oracle::add(a, oracle::affine(cur), oracle::affine(cur));
    cur = dbl(E, cur);
    CHECK(oracle::affine(cur) == want);
  }
}

TEST_CASE("real components") {
  RealComponents rc = real_components(kE90);
  REQUIRE(rc.count == 2);
  REQUIRE(rc.roots.size() == 3);
  // roots of 4x^3 - 360x are -sqrt(90), 0, sqrt(90)
  CHECK(rc.roots[0].lo < -9);
  CHECK(rc.roots[0].hi >= Rational(-9487, 1000));
  CHECK(rc.roots[1].lo < 0);
  CHECK(rc.roots[1].hi >= 0);
  CHECK(rc.roots[2].lo < Rational(9487, 1000));
  CHECK(rc.roots[2].hi > 9);
  for (std::size_t i = 0; i + 1 < rc.roots.size(); ++i) CHECK(rc.roots[i].hi <= rc.roots[i + 1].lo);

  CHECK(real_components(Curve::parse("[0,0,0,150,0]")).count == 1);
  CHECK(real_components(Curve::parse("[0,0,1,-7,6]")).count == 2);

  for (const char* s : {"[0,0,1,-7,6]", "[1,-1,0,-16,28]", "[0,0,0,-28,52]", "[1,0,0,-8755,350177]"}) {
    Curve E = Curve::parse(s);
    RealComponents r = real_components(E);
    CHECK(r.count == (E.delta() > 0 ? 2 : 1));
    for (const auto& iv : r.roots) {
      Rational flo = two_torsion_cubic(E, iv.lo), fhi = two_torsion_cubic(E, iv.hi);
      CHECK((fhi == 0 || (flo < 0) != (fhi < 0)));
    }
  }
}

TEST_CASE("bounded component membership") {
  CHECK(on_bounded_component(kE90, pt("-9,9")));
  CHECK_FALSE(on_bounded_component(kE90, pt("49/4,-217/8")));
  CHECK(on_bounded_component(kE90, pt("-6,18")));
  CHECK_THROWS_AS(on_bounded_component(Curve::parse("[0,0,0,150,0]"), pt("10,50")), DomainError);
  CHECK_THROWS_AS(on_bounded_component(kE90, RationalPoint::identity()), DomainError);
}

TEST_CASE("odd multiples of (-9,9) lie on the bounded component of E_90") {
  RationalPoint Q1 = pt("-9,9");
  for (int n = 1; n <= 20; ++n) CHECK_MESSAGE(on_bounded_component(kE90, scalar_mul(kE90, n, Q1)) == (n % 2 == 1), n);
}

}  // TEST_SUITE
