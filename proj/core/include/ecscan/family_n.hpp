#pragma once

#include "ecscan/curve.hpp"

// Formulas for the family E_N : y^2 = x^3 - N x and its 2-isogenous partner
// E'_N : y^2 = x^3 + 4 N x.
namespace ecscan::family_n {

Curve curve_e(const Integer& N);
Curve curve_e_prime(const Integer& N);

/// x(2P) = ((A^2 + N B^4) / (2 C B))^2, reduced. Throws when C = 0.
Rational duplicate_x(const Integer& N, const RationalPoint& P);

/// x-coordinate of the image on E_N of a point of E'_N with abscissa x:
/// (x + 4N/x) / 4. The unscaled x + 4N/x is the abscissa on the isomorphic
/// model y^2 = x^3 - 16 N x. Throws on x = 0.
Rational isogeny_x(const Integer& N, const Rational& x);
Rational isogeny_x_unscaled(const Integer& N, const Rational& x);

/// True iff X^3 - N X is the square of a rational.
bool image_on_curve(const Integer& N, const Rational& X);

struct LemmaReport {
  Integer N;
  Integer A, B, C;
  bool divides_plus = false;         // C | A^2 + N B^4
  bool divides_plus_2adic = false;   // C | 2 (A^2 + N B^4)
  bool identity_minus = false;       // C^2 = A (A^2 - N B^4)
  bool bound_C = false;              // |C| <= 2N
  bool bound_A = false;              // |A| <= 4 N^2
  double log_x_over_log_N = 0;       // raw ratio for inspecting hidden constants
};

/// Evaluates each check exactly; nothing is asserted.
LemmaReport lemma_invariants(const Integer& N, const RationalPoint& P);

/// |A / B^2| <= N. Throws DomainError if P is not on the bounded component.
bool ebn_bound_check(const Integer& N, const RationalPoint& P);

}  // namespace ecscan::family_n
