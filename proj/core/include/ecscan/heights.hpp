#pragma once

#include <string>
#include <variant>

#include "ecscan/curve.hpp"

namespace ecscan::heights {

/// Natural log of |n| from the bit length and the leading 53 bits; never
/// converts the whole integer to floating point. Throws on zero.
double log_abs(const Integer& n);
double log_abs_rational(const Rational& q);

struct AtInfinity {
  bool operator==(const AtInfinity&) const = default;
};
/// The point heights are measured from: infinity, or a finite rational point.
using Target = std::variant<AtInfinity, RationalPoint>;

/// h_D(Q): max(0, log|x(Q)|) for D at infinity, max(0, -log|x(Q) - x(D)|)
/// otherwise. Throws DomainError if Q is the identity or x(Q) = x(D).
double weil_height_from(const Target& D, const RationalPoint& Q);

/// log max(|a|, |b|) for q = a/b in lowest terms.
double projective_height(const Rational& q);

/// (1/12) max(h(j), log|delta|).
double curve_height(const Curve& E);

/// 4 h(E): an upper bound for log|x| on the bounded real component of a
/// short Weierstrass curve. Throws if E is not short or has one component.
double bounded_component_bound(const Curve& E);

struct HallRecord {
  Integer d;
  Integer x;
  Integer y;
  /// +1 when y^2 = x^3 + d, -1 when y^2 = x^3 - d.
  int sign = +1;
  double log_x = 0;
  double ratio = 0;
};

/// Finds y with y^2 = x^3 + d or x^3 - d (tried in that order). Throws
/// DomainError when neither is a square, d = 0 or x < 2.
HallRecord hall_verify(const Integer& d, const Integer& x);

}  // namespace ecscan::heights
