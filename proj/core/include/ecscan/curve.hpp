#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ecscan {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised for inputs outside an operation's domain (singular curve, point not
/// on curve, zero where a unit is required, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
///
/// The b/c invariants, discriminant and j-invariant are computed once at
/// construction; a Curve is immutable afterwards.
class Curve {
 public:
  /// Throws DomainError when the discriminant vanishes.
  Curve(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6);
  static Curve from_tate(const std::array<long, 5>& a);
  /// Parses "[a1,a2,a3,a4,a6]" (whitespace and the brackets are optional).
  static Curve parse(const std::string& text);

  const Integer& a1() const { return a_[0]; }
  const Integer& a2() const { return a_[1]; }
  const Integer& a3() const { return a_[2]; }
  const Integer& a4() const { return a_[3]; }
  const Integer& a6() const { return a_[4]; }

  const Integer& b2() const { return b2_; }
  const Integer& b4() const { return b4_; }
  const Integer& b6() const { return b6_; }
  const Integer& b8() const { return b8_; }
  const Integer& c4() const { return c4_; }
  const Integer& c6() const { return c6_; }
  const Integer& delta() const { return delta_; }
  const Rational& j() const { return j_; }

  bool is_short_form() const { return a_[0] == 0 && a_[1] == 0 && a_[2] == 0; }

  std::string to_string() const;
  bool operator==(const Curve& other) const { return a_ == other.a_; }

 private:
  std::array<Integer, 5> a_;
  Integer b2_, b4_, b6_, b8_, c4_, c6_, delta_;
  Rational j_;
};

/// A rational point in the form (A/B^2, C/B^3) with B >= 1 and
/// gcd(B, A*C) = 1, or the point at infinity.
class RationalPoint {
 public:
  RationalPoint() = default;  // identity
  static RationalPoint identity() { return {}; }
  /// Builds a finite point from its canonical triple; throws DomainError if
  /// B < 1 or gcd(B, A*C) != 1.
  static RationalPoint from_abc(Integer A, Integer B, Integer C);
  /// Builds a finite point from affine coordinates; throws DomainError when
  /// the denominators do not have the (B^2, B^3) shape.
  static RationalPoint from_xy(const Rational& x, const Rational& y);
  /// Parses "x,y" where each coordinate is an integer or "p/q".
  static RationalPoint parse(const std::string& text);

  bool is_identity() const { return identity_; }
  const Integer& A() const { return A_; }
  const Integer& B() const { return B_; }
  const Integer& C() const { return C_; }
  Rational x() const;
  Rational y() const;

  std::string to_string() const;
  bool operator==(const RationalPoint& other) const;

 private:
  RationalPoint(Integer A, Integer B, Integer C);
  friend RationalPoint make_point_unchecked(Integer A, Integer B, Integer C);

  bool identity_ = true;
  Integer A_{0}, B_{1}, C_{0};
};

/// Intervals (lo, hi] isolating the real roots of 4x^3 + b2 x^2 + 2 b4 x + b6.
struct RootInterval {
  Rational lo;
  Rational hi;
};

struct RealComponents {
  int count = 1;
  /// Empty when count == 1, otherwise three disjoint intervals in
  /// increasing order.
  std::vector<RootInterval> roots;
};

Integer discriminant(const Curve& curve);
bool contains(const Curve& curve, const RationalPoint& pt);
/// a1, a3 in {0,1} and a2 in {-1,0,1}. Minimality is not checked.
bool is_standardized_shape(const Curve& curve);

RationalPoint negate(const Curve& curve, const RationalPoint& P);
RationalPoint add(const Curve& curve, const RationalPoint& P, const RationalPoint& Q);
RationalPoint dbl(const Curve& curve, const RationalPoint& P);
/// R + G when R - G is already known. Same result as add(); the known
/// difference lets most of the cancellation happen on small operands.
RationalPoint add_advance(const Curve& curve, const RationalPoint& R, const RationalPoint& G,
                          const RationalPoint& R_minus_G);
RationalPoint scalar_mul(const Curve& curve, std::int64_t n, const RationalPoint& P);

/// Sum of k_i * G_i; the workhorse for recomputing lattice points directly.
RationalPoint combination(const Curve& curve, const std::vector<RationalPoint>& gens,
                          const std::vector<std::int64_t>& coeffs);

/// Evaluates 4x^3 + b2 x^2 + 2 b4 x + b6, whose roots are the x-coordinates
/// of the 2-torsion points.
Rational two_torsion_cubic(const Curve& curve, const Rational& x);

RealComponents real_components(const Curve& curve);

/// True iff x(P) lies left of the largest real root. Throws DomainError on a
/// curve with one real component or for the identity.
bool on_bounded_component(const Curve& curve, const RationalPoint& P);

}  // namespace ecscan
