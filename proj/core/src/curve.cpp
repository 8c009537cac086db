#include "ecscan/curve.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "parse_util.hpp"

namespace ecscan {

Curve::Curve(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
  const Integer& A1 = a_[0];
  const Integer& A2 = a_[1];
  const Integer& A3 = a_[2];
  const Integer& A4 = a_[3];
  const Integer& A6 = a_[4];
  b2_ = A1 * A1 + 4 * A2;
  b4_ = 2 * A4 + A1 * A3;
  b6_ = A3 * A3 + 4 * A6;
  b8_ = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
  c4_ = b2_ * b2_ - 24 * b4_;
  c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
  delta_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
  if (delta_ == 0) throw DomainError("singular curve " + to_string() + ": discriminant is zero");
  j_ = Rational(c4_ * c4_ * c4_, delta_);
  j_.canonicalize();
}

Curve Curve::from_tate(const std::array<long, 5>& a) {
  return Curve(Integer(a[0]), Integer(a[1]), Integer(a[2]), Integer(a[3]), Integer(a[4]));
}

Curve Curve::parse(const std::string& text) {
  std::string body = detail::strip(text);
  if (!body.empty() && body.front() == '[') body.erase(body.begin());
  if (!body.empty() && body.back() == ']') body.pop_back();
  auto parts = detail::split(body, ',');
  if (parts.size() != 5) throw DomainError("curve must have 5 coefficients: '" + text + "'");
  std::array<Integer, 5> a;
  for (std::size_t i = 0; i < 5; ++i) a[i] = detail::parse_integer(parts[i]);
  return Curve(a[0], a[1], a[2], a[3], a[4]);
}

std::string Curve::to_string() const {
  std::ostringstream os;
  os << '[' << a_[0] << ',' << a_[1] << ',' << a_[2] << ',' << a_[3] << ',' << a_[4] << ']';
  return os.str();
}

RationalPoint::RationalPoint(Integer A, Integer B, Integer C)
    : identity_(false), A_(std::move(A)), B_(std::move(B)), C_(std::move(C)) {}

RationalPoint make_point_unchecked(Integer A, Integer B, Integer C) {
  return RationalPoint(std::move(A), std::move(B), std::move(C));
}

RationalPoint RationalPoint::from_abc(Integer A, Integer B, Integer C) {
  if (B < 1) throw DomainError("point denominator B must be >= 1");
  Integer g;
  Integer ac = A * C;
  mpz_gcd(g.get_mpz_t(), B.get_mpz_t(), ac.get_mpz_t());
  if (g != 1) throw DomainError("point is not in canonical form: gcd(B, A*C) != 1");
  return RationalPoint(std::move(A), std::move(B), std::move(C));
}

RationalPoint RationalPoint::from_xy(const Rational& x, const Rational& y) {
  Integer B;
  if (!mpz_root(B.get_mpz_t(), x.get_den_mpz_t(), 2))
    throw DomainError("x denominator is not a square");
  if (y.get_den() != B * B * B) throw DomainError("y denominator is not the cube of sqrt(den x)");
  return RationalPoint(x.get_num(), B, y.get_num());
}

RationalPoint RationalPoint::parse(const std::string& text) {
  auto parts = detail::split(detail::strip(text), ',');
  if (parts.size() != 2) throw DomainError("point must be 'x,y': '" + text + "'");
  return from_xy(detail::parse_rational(parts[0]), detail::parse_rational(parts[1]));
}

Rational RationalPoint::x() const {
  Rational r(A_, B_ * B_);
  r.canonicalize();
  return r;
}

Rational RationalPoint::y() const {
  Rational r(C_, B_ * B_ * B_);
  r.canonicalize();
  return r;
}

std::string RationalPoint::to_string() const {
  if (identity_) return "O";
  std::ostringstream os;
  os << x() << ',' << y();
  return os.str();
}

bool RationalPoint::operator==(const RationalPoint& other) const {
  if (identity_ || other.identity_) return identity_ == other.identity_;
  return A_ == other.A_ && B_ == other.B_ && C_ == other.C_;
}

Integer discriminant(const Curve& curve) { return curve.delta(); }

bool contains(const Curve& E, const RationalPoint& P) {
  if (P.is_identity()) return true;
  // Multiply the Weierstrass equation through by B^6.
  const Integer& A = P.A();
  const Integer& B = P.B();
  const Integer& C = P.C();
  Integer B2 = B * B;
  Integer B3 = B2 * B;
  Integer B4 = B2 * B2;
  Integer B6 = B3 * B3;
  Integer lhs = C * C + E.a1() * A * C * B + E.a3() * C * B3;
  Integer rhs = A * A * A + E.a2() * A * A * B2 + E.a4() * A * B4 + E.a6() * B6;
  return lhs == rhs;
}

bool is_standardized_shape(const Curve& E) {
  auto in01 = [](const Integer& v) { return v == 0 || v == 1; };
  return in01(E.a1()) && in01(E.a3()) && E.a2() >= -1 && E.a2() <= 1;
}

RationalPoint negate(const Curve& E, const RationalPoint& P) {
  if (P.is_identity()) return P;
  // y' = -y - a1 x - a3, scaled by B^3.
  const Integer& B = P.B();
  Integer C = -P.C() - E.a1() * P.A() * B - E.a3() * B * B * B;
  return make_point_unchecked(P.A(), P.B(), std::move(C));
}

namespace {

bool divisible(const Integer& n, const Integer& d) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }

// Replaces n by n / d when d divides n; reports whether it did.
bool divide_if_exact(Integer& n, const Integer& d) {
  if (!divisible(n, d)) return false;
  mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return true;
}

// Given the slope lambda = N/D and the chord data expressed over D, produce
// the reduced sum. The caller supplies
//   x1 + x2 = S / D^2,  x1 = P1 / D^2,  y1 = Q1 / D^3.
// `hint`, when nonzero, is a factor expected to cancel from D; it is only
// divided out after checking, so a wrong hint costs time, not correctness.
RationalPoint finish_chord(const Curve& E, const Integer& N, Integer D, const Integer& S, const Integer& P1,
                           const Integer& Q1, const Integer* hint = nullptr) {
  Integer D2 = D * D;
  Integer X = N * N + E.a1() * N * D - E.a2() * D2 - S;
  Integer Y = N * (P1 - X) - Q1 - E.a1() * X * D - E.a3() * D2 * D;

  if (hint && *hint > 1 && divisible(D, *hint)) {
    Integer h2 = *hint * *hint;
    if (divisible(X, h2)) {
      // x3 = X/D^2 has denominator dividing (D/h)^2, so y3 = Y/D^3 has
      // denominator dividing (D/h)^3 and the divisions below are exact.
      mpz_divexact(X.get_mpz_t(), X.get_mpz_t(), h2.get_mpz_t());
      mpz_divexact(D.get_mpz_t(), D.get_mpz_t(), hint->get_mpz_t());
      Integer h3 = h2 * *hint;
      mpz_divexact(Y.get_mpz_t(), Y.get_mpz_t(), h3.get_mpz_t());
      D2 = D * D;
    }
  }

  Integer g;
  mpz_gcd(g.get_mpz_t(), X.get_mpz_t(), D.get_mpz_t());
  if (g == 1) {
    if (D < 0) return make_point_unchecked(std::move(X), Integer(-D), Integer(-Y));
    return make_point_unchecked(std::move(X), std::move(D), std::move(Y));
  }

  Integer s;
  mpz_gcd(g.get_mpz_t(), X.get_mpz_t(), D2.get_mpz_t());
  mpz_sqrt(s.get_mpz_t(), g.get_mpz_t());
  Integer t = (D < 0) ? Integer(-s) : s;

  Integer A3, B3, C3;
  mpz_divexact(A3.get_mpz_t(), X.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(B3.get_mpz_t(), D.get_mpz_t(), t.get_mpz_t());
  Integer t3 = g * t;
  mpz_divexact(C3.get_mpz_t(), Y.get_mpz_t(), t3.get_mpz_t());
  return make_point_unchecked(std::move(A3), std::move(B3), std::move(C3));
}

// Chord through two finite points with distinct x. The line is
// y = lambda x + nu with lambda = N/D and nu = M/D over D = B1 B2 W.
// `cancel`, when given, is divided out of N, M and W after checking; with
// R - Q known, its denominator is the factor that cancels in practice.
RationalPoint chord(const Curve& E, const RationalPoint& P, const RationalPoint& Q, const Integer* cancel) {
  const Integer& A1 = P.A();
  const Integer& B1 = P.B();
  const Integer& C1 = P.C();
  const Integer& A2 = Q.A();
  const Integer& B2 = Q.B();
  const Integer& C2 = Q.C();
  Integer B1s = B1 * B1;
  Integer B2s = B2 * B2;
  Integer W = A2 * B1s - A1 * B2s;
  Integer N = C2 * B1s * B1 - C1 * B2s * B2;
  Integer M = C1 * A2 * B2 - C2 * A1 * B1;
  if (cancel && *cancel > 1) {
    if (divisible(W, *cancel) && divisible(N, *cancel) && divisible(M, *cancel)) {
      divide_if_exact(W, *cancel);
      divide_if_exact(N, *cancel);
      divide_if_exact(M, *cancel);
    }
  }
  const Integer D = B1 * B2 * W;

  // x3 = X / D^2
  Integer X = N * N + E.a1() * N * D - E.a2() * D * D - (A1 * B2s + A2 * B1s) * (W * W);
  Integer Dx = D;
  // The larger input denominator almost always cancels in full.
  const Integer& h = B1 > B2 ? B1 : B2;
  if (h > 1) {
    if (divide_if_exact(X, h * h)) mpz_divexact(Dx.get_mpz_t(), Dx.get_mpz_t(), h.get_mpz_t());
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), X.get_mpz_t(), Dx.get_mpz_t());
  Integer A3, B3;
  if (g == 1) {
    A3 = std::move(X);
    B3 = abs(Dx);
  } else {
    Integer D2 = Dx * Dx;
    mpz_gcd(g.get_mpz_t(), X.get_mpz_t(), D2.get_mpz_t());
    Integer s;
    mpz_sqrt(s.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(A3.get_mpz_t(), X.get_mpz_t(), g.get_mpz_t());
    Dx = abs(Dx);
    mpz_divexact(B3.get_mpz_t(), Dx.get_mpz_t(), s.get_mpz_t());
  }

  // y3 = -(lambda + a1) x3 - nu - a3; with t = D / B3 this is
  // C3 = -((N + a1 D) A3 + M B3^2) / t - a3 B3^3.
  Integer t;
  mpz_divexact(t.get_mpz_t(), D.get_mpz_t(), B3.get_mpz_t());
  Integer B3s = B3 * B3;
  Integer num = (N + E.a1() * D) * A3 + M * B3s;
  Integer C3;
  mpz_divexact(C3.get_mpz_t(), num.get_mpz_t(), t.get_mpz_t());
  C3 = -C3 - E.a3() * B3s * B3;
  return make_point_unchecked(std::move(A3), std::move(B3), std::move(C3));
}

}  // namespace

RationalPoint dbl(const Curve& E, const RationalPoint& P) {
  if (P.is_identity()) return P;
  const Integer& A = P.A();
  const Integer& B = P.B();
  const Integer& C = P.C();
  Integer B2 = B * B;
  Integer W = 2 * C + E.a1() * A * B + E.a3() * B2 * B;
  if (W == 0) return RationalPoint::identity();
  Integer N = 3 * A * A + 2 * E.a2() * A * B2 + E.a4() * B2 * B2 - E.a1() * C * B;
  Integer D = B * W;
  Integer W2 = W * W;
  Integer P1 = A * W2;
  return finish_chord(E, N, std::move(D), 2 * P1, P1, C * W2 * W, &B);
}

RationalPoint add(const Curve& E, const RationalPoint& P, const RationalPoint& Q) {
  if (P.is_identity()) return Q;
  if (Q.is_identity()) return P;
  if (P.A() == Q.A() && P.B() == Q.B()) {
    if (P.C() == Q.C()) return dbl(E, P);
    return RationalPoint::identity();  // same x, different y: Q = -P
  }
  return chord(E, P, Q, nullptr);
}

RationalPoint add_advance(const Curve& E, const RationalPoint& R, const RationalPoint& G,
                          const RationalPoint& R_minus_G) {
  if (R.is_identity() || G.is_identity() || R_minus_G.is_identity() || (R.A() == G.A() && R.B() == G.B()))
    return add(E, R, G);
  return chord(E, R, G, &R_minus_G.B());
}

RationalPoint scalar_mul(const Curve& E, std::int64_t n, const RationalPoint& P) {
  if (n == 0 || P.is_identity()) return RationalPoint::identity();
  RationalPoint base = n < 0 ? negate(E, P) : P;
  std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  RationalPoint acc;
  int top = 63;
  while (!((k >> top) & 1U)) --top;
  for (int bit = top; bit >= 0; --bit) {
    acc = dbl(E, acc);
    if ((k >> bit) & 1U) acc = add(E, acc, base);
  }
  return acc;
}

RationalPoint combination(const Curve& E, const std::vector<RationalPoint>& gens,
                          const std::vector<std::int64_t>& coeffs) {
  if (gens.size() != coeffs.size()) throw DomainError("combination: size mismatch");
  RationalPoint acc;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (coeffs[i] != 0) acc = add(E, acc, scalar_mul(E, coeffs[i], gens[i]));
  }
  return acc;
}

// --- real roots ------------------------------------------------------------

namespace {

using Poly = std::vector<Rational>;  // coefficients, lowest degree first

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Rational eval(const Poly& p, const Rational& x) {
  Rational r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  return d;
}

Poly remainder(Poly num, const Poly& den) {
  while (num.size() >= den.size() && !num.empty()) {
    Rational factor = num.back() / den.back();
    std::size_t shift = num.size() - den.size();
    for (std::size_t i = 0; i < den.size(); ++i) num[i + shift] -= factor * den[i];
    num.pop_back();
    trim(num);
  }
  return num;
}

class SturmChain {
 public:
  explicit SturmChain(Poly p) {
    trim(p);
    chain_.push_back(p);
    chain_.push_back(derivative(p));
    while (chain_.back().size() > 1) {
      Poly r = remainder(chain_[chain_.size() - 2], chain_.back());
      if (r.empty()) break;
      for (auto& c : r) c = -c;
      chain_.push_back(std::move(r));
    }
  }

  int sign_changes(const Rational& x) const {
    int changes = 0;
    int last = 0;
    for (const auto& p : chain_) {
      int s = sgn(eval(p, x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  }

  // Distinct roots in (lo, hi].
  int count(const Rational& lo, const Rational& hi) const {
    return sign_changes(lo) - sign_changes(hi);
  }

  const Poly& poly() const { return chain_.front(); }

 private:
  std::vector<Poly> chain_;
};

Poly torsion_cubic(const Curve& E) {
  return Poly{Rational(E.b6()), Rational(2 * E.b4()), Rational(E.b2()), Rational(4)};
}

void isolate(const SturmChain& s, const Rational& lo, const Rational& hi,
             std::vector<RootInterval>& out) {
  int n = s.count(lo, hi);
  if (n == 0) return;
  if (n == 1) {
    out.push_back({lo, hi});
    return;
  }
  Rational mid = (lo + hi) / 2;
  isolate(s, lo, mid, out);
  isolate(s, mid, hi, out);
}

}  // namespace

Rational two_torsion_cubic(const Curve& E, const Rational& x) {
  return eval(torsion_cubic(E), x);
}

RealComponents real_components(const Curve& E) {
  RealComponents rc;
  if (E.delta() < 0) return rc;
  rc.count = 2;
  Poly f = torsion_cubic(E);
  // Cauchy bound, pushed out by one so the left endpoint is never a root.
  Rational bound = 0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    Rational q = abs(f[i] / f.back());
    if (q > bound) bound = q;
  }
  bound += 2;
  SturmChain chain(f);
  isolate(chain, -bound, bound, rc.roots);
  return rc;
}

bool on_bounded_component(const Curve& E, const RationalPoint& P) {
  if (P.is_identity()) throw DomainError("on_bounded_component: identity has no x-coordinate");
  RealComponents rc = real_components(E);
  if (rc.count != 2) throw DomainError("on_bounded_component: curve has one real component");
  Rational x = P.x();
  SturmChain chain(torsion_cubic(E));
  Rational lo = rc.roots[2].lo;
  Rational hi = rc.roots[2].hi;
  if (x <= lo) return true;
  if (x > hi) return false;
  if (eval(chain.poly(), x) == 0) return false;  // x is the largest root itself
  while (x > lo && x <= hi) {
    Rational mid = (lo + hi) / 2;
    if (chain.count(lo, mid) == 1)
      hi = mid;
    else
      lo = mid;
  }
  return x <= lo;
}

}  // namespace ecscan
