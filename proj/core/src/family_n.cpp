#include "ecscan/family_n.hpp"

#include "ecscan/arith.hpp"
#include "ecscan/heights.hpp"

namespace ecscan::family_n {

namespace {

void require_positive(const Integer& N) {
  if (N <= 0) throw DomainError("N must be a positive integer");
}

bool divides(const Integer& d, const Integer& n) {
  if (d == 0) return n == 0;
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

}  // namespace

Curve curve_e(const Integer& N) {
  require_positive(N);
  return Curve(0, 0, 0, -N, 0);
}

Curve curve_e_prime(const Integer& N) {
  require_positive(N);
  return Curve(0, 0, 0, 4 * N, 0);
}

Rational duplicate_x(const Integer& N, const RationalPoint& P) {
  if (P.is_identity() || P.C() == 0) throw DomainError("duplicate_x: P is 2-torsion");
  const Integer& A = P.A();
  const Integer& B = P.B();
  Integer B2 = B * B;
  Rational r(A * A + N * B2 * B2, 2 * P.C() * B);
  r.canonicalize();
  return r * r;
}

Rational isogeny_x_unscaled(const Integer& N, const Rational& x) {
  if (x == 0) throw DomainError("isogeny_x: x must be nonzero");
  return x + Rational(4 * N) / x;
}

Rational isogeny_x(const Integer& N, const Rational& x) {
  return isogeny_x_unscaled(N, x) / 4;
}

bool image_on_curve(const Integer& N, const Rational& X) {
  Rational v = X * X * X - N * X;
  return arith::exact_sqrt(v.get_num()).has_value() && arith::exact_sqrt(v.get_den()).has_value();
}

LemmaReport lemma_invariants(const Integer& N, const RationalPoint& P) {
  if (P.is_identity()) throw DomainError("lemma_invariants: identity");
  LemmaReport rep;
  rep.N = N;
  rep.A = P.A();
  rep.B = P.B();
  rep.C = P.C();
  Integer B4 = rep.B * rep.B * rep.B * rep.B;
  Integer plus = rep.A * rep.A + N * B4;
  rep.divides_plus = divides(rep.C, plus);
  rep.divides_plus_2adic = divides(rep.C, 2 * plus);
  rep.identity_minus = rep.C * rep.C == rep.A * (rep.A * rep.A - N * B4);
  rep.bound_C = abs(rep.C) <= 2 * N;
  rep.bound_A = abs(rep.A) <= 4 * N * N;
  if (rep.A != 0 && N > 1)
    rep.log_x_over_log_N = heights::log_abs_rational(P.x()) / heights::log_abs(N);
  return rep;
}

bool ebn_bound_check(const Integer& N, const RationalPoint& P) {
  Curve E = curve_e(N);
  if (!contains(E, P)) throw DomainError("ebn_bound_check: point is not on E_N");
  if (!on_bounded_component(E, P))
    throw DomainError("ebn_bound_check: point is not on the bounded component");
  return abs(P.x()) <= N;
}

}  // namespace ecscan::family_n
