#include <doctest.h>

#include "ecscan/family_n.hpp"
#include "ecscan/search.hpp"
#include "property_checks.hpp"

using namespace ecscan;

namespace {

RationalPoint pt(const char* s) { return RationalPoint::parse(s); }

}  // namespace

TEST_SUITE("family_n") {

TEST_CASE("curve models") {
  CHECK(family_n::curve_e(Integer(90)) == Curve::parse("[0,0,0,-90,0]"));
  CHECK(family_n::curve_e_prime(Integer(90)) == Curve::parse("[0,0,0,360,0]"));
}

TEST_CASE("duplication formula examples") {
  CHECK(family_n::duplicate_x(Integer(90), pt("-6,18")) == Rational(49, 4));
  CHECK(family_n::duplicate_x(Integer(90), pt("-9,9")) == Rational(361, 4));
  CHECK_THROWS_AS(family_n::duplicate_x(Integer(90), pt("0,0")), DomainError);
}

TEST_CASE("duplication formula equals doubling on E_90 and E_1681") {
  props::Check c90 = props::duplicate_x_matches_doubling(90, props::e90_generators(), 50);
  CHECK_MESSAGE(c90.ok, c90.summary());
  CHECK(c90.samples == 50);
  props::Check c1681 = props::duplicate_x_matches_doubling(1681, props::e1681_generators(), 50);
  CHECK_MESSAGE(c1681.ok, c1681.summary());
  CHECK(c1681.samples == 50);
}

TEST_CASE("isogeny abscissa") {
  // (2, 4) lies on y^2 = x^3 + 4x; x + 4/x = 4 is the abscissa on y^2 = x^3 - 16x
  CHECK(family_n::isogeny_x_unscaled(Integer(1), Rational(2)) == 4);
  CHECK(family_n::isogeny_x(Integer(1), Rational(2)) == 1);
  CHECK(family_n::image_on_curve(Integer(1), Rational(1)));    // 1 - 1 = 0
  CHECK_FALSE(family_n::image_on_curve(Integer(1), Rational(4)));  // 60 is not a square
  CHECK(contains(Curve::parse("[0,0,0,-16,0]"), pt("4,0")));
  // N = 9 is a square: x = 2 sqrt(N) maps to 4 sqrt(N) before scaling
  CHECK(family_n::isogeny_x_unscaled(Integer(9), Rational(6)) == 12);
  CHECK(family_n::image_on_curve(Integer(1681), Rational(841)));
  CHECK(Integer(841) * 841 * 841 - Integer(1681) * 841 == Integer(24360) * 24360);
  CHECK_THROWS_AS(family_n::isogeny_x(Integer(5), Rational(0)), DomainError);
}

TEST_CASE("isogeny image audit on lattice points") {
  for (long N : {90L, 1681L}) {
    auto gens = N == 90 ? props::e90_generators() : props::e1681_generators();
    props::Check c = props::isogeny_image(N, gens, 6);
    CHECK_MESSAGE(c.ok, c.summary());
    CHECK(c.samples == search::lattice_size(2, 6));
  }
}

TEST_CASE("lemma invariants") {
  auto r = family_n::lemma_invariants(Integer(90), pt("-9,9"));
  CHECK(r.identity_minus);
  CHECK(r.A == -9);
  CHECK(r.C == 9);
  r = family_n::lemma_invariants(Integer(90), pt("-6,18"));
  CHECK(r.identity_minus);
  CHECK(r.bound_C);
  CHECK(r.bound_A);
  r = family_n::lemma_invariants(Integer(90), pt("49/4,-217/8"));
  CHECK(r.identity_minus);
  CHECK(r.B == 2);
}

TEST_CASE("C^2 = A(A^2 - N B^4) on every scanned point") {
  for (long N : {90L, 1681L}) {
    const Integer n(N);
    auto gens = N == 90 ? props::e90_generators() : props::e1681_generators();
    std::size_t seen = 0, bad = 0;
    search::enumerate_lattice(family_n::curve_e(n), gens, 12, [&](const search::IndexVector&, const RationalPoint& P) {
      ++seen;
      if (!family_n::lemma_invariants(n, P).identity_minus) ++bad;
    });
    CHECK(seen == search::lattice_size(2, 12));
    CHECK(bad == 0);
  }
}

TEST_CASE("bounded component abscissae are at most N") {
  CHECK(family_n::ebn_bound_check(Integer(90), pt("-9,9")));
  CHECK(family_n::ebn_bound_check(Integer(1681), pt("-9,120")));
  CHECK_THROWS_AS(family_n::ebn_bound_check(Integer(90), pt("49/4,-217/8")), DomainError);

  props::Check c90 = props::ebn_bound(90, props::e90_generators(), 12);
  CHECK_MESSAGE(c90.ok, c90.summary());
  props::Check c1681 = props::ebn_bound(1681, props::e1681_generators(), 12);
  CHECK_MESSAGE(c1681.ok, c1681.summary());
}

}  // TEST_SUITE
