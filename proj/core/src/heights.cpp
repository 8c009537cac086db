#include "ecscan/heights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ecscan/arith.hpp"

namespace ecscan::heights {

double log_abs(const Integer& n) {
  if (n == 0) throw DomainError("log of zero");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::numbers::ln2;
}

double log_abs_rational(const Rational& q) {
  if (q == 0) throw DomainError("log of zero");
  return log_abs(q.get_num()) - log_abs(q.get_den());
}

double weil_height_from(const Target& D, const RationalPoint& Q) {
  if (Q.is_identity()) throw DomainError("height of the identity is undefined here");
  if (std::holds_alternative<AtInfinity>(D)) return std::max(0.0, log_abs_rational(Q.x()));
  const auto& d = std::get<RationalPoint>(D);
  if (d.is_identity()) return std::max(0.0, log_abs_rational(Q.x()));
  Rational diff = Q.x() - d.x();
  if (diff == 0) throw DomainError("x(Q) = x(D): distance to D is zero");
  return std::max(0.0, -log_abs_rational(diff));
}

double projective_height(const Rational& q) {
  Rational r = q;
  r.canonicalize();
  Integer m = std::max(Integer(abs(r.get_num())), Integer(abs(r.get_den())));
  return log_abs(m);
}

double curve_height(const Curve& E) {
  return std::max(projective_height(E.j()), log_abs(E.delta())) / 12.0;
}

double bounded_component_bound(const Curve& E) {
  if (!E.is_short_form()) throw DomainError("bounded_component_bound needs a short Weierstrass model");
  if (E.delta() <= 0) throw DomainError("bounded_component_bound: curve has one real component");
  return 4.0 * curve_height(E);
}

HallRecord hall_verify(const Integer& d, const Integer& x) {
  if (d == 0) throw DomainError("hall_verify: d must be nonzero");
  if (x < 2) throw DomainError("hall_verify: x must be >= 2");
  Integer cube = x * x * x;
  HallRecord rec;
  rec.d = d;
  rec.x = x;
  if (auto y = arith::exact_sqrt(cube + d)) {
    rec.y = *y;
    rec.sign = +1;
  } else if (auto y2 = arith::exact_sqrt(cube - d)) {
    rec.y = *y2;
    rec.sign = -1;
  } else {
    throw DomainError("hall_verify: neither x^3 + d nor x^3 - d is a square");
  }
  rec.log_x = log_abs(x);
  rec.ratio = rec.log_x / (2.0 * log_abs(d));
  return rec;
}

}  // namespace ecscan::heights
