#include "property_checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ecscan/arith.hpp"
#include "ecscan/family_n.hpp"
#include "ecscan/heights.hpp"
#include "ecscan/report.hpp"
#include "oracles.hpp"

namespace props {

using namespace ecscan;

std::string Check::summary() const {
  std::ostringstream os;
  os << name << ": " << samples << " samples";
  if (!ok) os << ", first failure: " << failure;
  return os.str();
}

std::vector<RationalPoint> e90_generators() {
  return {RationalPoint::parse("-9,9"), RationalPoint::parse("-6,18")};
}

std::vector<RationalPoint> e1681_generators() {
  return {RationalPoint::parse("-9,120"), RationalPoint::parse("841,24360")};
}

namespace {

bool canonical(const RationalPoint& P) {
  if (P.is_identity()) return true;
  Integer g, ac = P.A() * P.C();
  mpz_gcd(g.get_mpz_t(), P.B().get_mpz_t(), ac.get_mpz_t());
  return P.B() >= 1 && g == 1;
}

std::string where(const Curve& E, const std::string& what) { return E.to_string() + " " + what; }

}  // namespace

Check group_law(const tables::Fixtures& fixtures) {
  Check c{"group law"};
  for (const auto& row : fixtures.rows()) {
    if (!row.curve || row.generators.empty()) continue;
    const Curve& E = *row.curve;
    // the group law is only claimed for points of E
    if (!std::all_of(row.generators.begin(), row.generators.end(),
                     [&](const RationalPoint& g) { return contains(E, g); }))
      continue;
    const auto a = oracle::coefficients(E);

    std::vector<RationalPoint> pts;
    for (const auto& g : row.generators) {
      pts.push_back(g);
      pts.push_back(scalar_mul(E, 2, g));
      pts.push_back(scalar_mul(E, -3, g));
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i; j < pts.size(); ++j) {
        RationalPoint s = add(E, pts[i], pts[j]);
        ++c.samples;
        if (!(s == add(E, pts[j], pts[i]))) c.fail(where(E, "P+Q != Q+P"));
        if (!contains(E, s) || !canonical(s)) c.fail(where(E, "sum not a canonical curve point"));
        if (!(oracle::affine(s) == oracle::add(a, oracle::affine(pts[i]), oracle::affine(pts[j]))))
          c.fail(where(E, "sum disagrees with the affine oracle"));
      }
    }

    if (row.generators.size() == 3) {
      const auto& P = row.generators[0];
      const auto& Q = row.generators[1];
      const auto& R = row.generators[2];
      ++c.samples;
      if (!(add(E, add(E, P, Q), R) == add(E, P, add(E, Q, R)))) c.fail(where(E, "(P+Q)+R != P+(Q+R)"));
      RationalPoint P2 = scalar_mul(E, 2, P), Q3 = scalar_mul(E, -3, Q), R5 = scalar_mul(E, 5, R);
      ++c.samples;
      if (!(add(E, add(E, P2, Q3), R5) == add(E, P2, add(E, Q3, R5))))
        c.fail(where(E, "associativity fails on multiples"));
    }
  }
  return c;
}

Check duplicate_x_matches_doubling(long N, const std::vector<RationalPoint>& gens, int samples) {
  Check c{"duplicate_x vs doubling, N=" + std::to_string(N)};
  const Integer n(N);
  const Curve E = family_n::curve_e(n);
  std::mt19937 rng(20240601u + static_cast<unsigned>(N));
  std::uniform_int_distribution<int> coeff(-6, 6);
  while (c.samples < static_cast<std::uint64_t>(samples)) {
    std::vector<std::int64_t> k;
    for (std::size_t i = 0; i < gens.size(); ++i) k.push_back(coeff(rng));
    RationalPoint P = combination(E, gens, k);
    if (P.is_identity() || P.C() == 0) continue;
    ++c.samples;
    if (family_n::duplicate_x(n, P) != scalar_mul(E, 2, P).x()) c.fail("mismatch at " + P.to_string());
  }
  return c;
}

Check eds_divisibility(const Curve& E, const RationalPoint& P, int nmax) {
  Check c{"EDS divisibility on " + E.to_string()};
  std::vector<Integer> B(nmax + 1);
  RationalPoint cur;
  for (int n = 1; n <= nmax; ++n) {
    cur = add(E, cur, P);
    B[n] = cur.B();
  }
  for (int m = 1; m <= nmax; ++m) {
    for (int n = m; n <= nmax; n += m) {
      ++c.samples;
      if (!mpz_divisible_p(B[n].get_mpz_t(), B[m].get_mpz_t()))
        c.fail("B_" + std::to_string(m) + " does not divide B_" + std::to_string(n));
    }
  }
  return c;
}

Check length_classify_oracle(std::uint32_t limit) {
  Check c{"length_classify oracle below " + std::to_string(limit)};
  using Kind = arith::LengthClass::Kind;
  const auto spf = oracle::smallest_prime_factors(limit);
  for (std::uint32_t n = 1; n < limit; ++n) {
    ++c.samples;
    const Integer N(static_cast<unsigned long>(n));
    const arith::LengthClass got = arith::length_classify(N);
    const int want = n == 1 ? 0 : oracle::distinct_prime_count(n, spf);
    const std::string at = "n=" + std::to_string(n) + " got " + got.label();
    switch (got.kind) {
      case Kind::Zero:
        if (want != 0) c.fail(at);
        break;
      case Kind::One: {
        if (want != 1) c.fail(at);
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), got.prime_power.prime.get_mpz_t(), got.prime_power.exponent);
        if (pk != N || got.prime_power.prime != spf[n]) c.fail(at + " (wrong p^k)");
        break;
      }
      case Kind::AtLeastTwo: {
        if (want < 2) c.fail(at);
        const auto& [u, v] = got.witnesses;
        Integer g;
        mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
        if (u <= 1 || v <= 1 || g != 1 || N % u != 0 || N % v != 0) c.fail(at + " (bad witnesses)");
        break;
      }
      case Kind::Unknown:
        c.fail(at);
        break;
    }
  }
  return c;
}

Check bounded_component_bound(const tables::Fixtures& fixtures, int bound) {
  Check c{"log|x| <= 4h(E) on bounded components"};
  std::vector<std::string> seen;
  for (const auto& row : fixtures.rows()) {
    if (!row.curve || row.generators.empty()) continue;
    const Curve& E = *row.curve;
    if (!E.is_short_form() || E.delta() <= 0) continue;
    const std::string key = E.to_string();
    bool dup = false;
    for (const auto& s : seen) dup = dup || s == key;
    if (dup) continue;
    seen.push_back(key);
    const double limit = heights::bounded_component_bound(E);
    search::enumerate_lattice(E, row.generators, bound, [&](const search::IndexVector& idx, const RationalPoint& Q) {
      if (!on_bounded_component(E, Q)) return;
      ++c.samples;
      if (Q.A() == 0) return;
      if (heights::log_abs_rational(Q.x()) > limit + 1e-6) {
        std::ostringstream os;
        os << key << " index";
        for (auto k : idx) os << ' ' << k;
        c.fail(os.str());
      }
    });
  }
  if (c.samples == 0) c.fail("no bounded-component points examined");
  return c;
}

Check ebn_bound(long N, const std::vector<RationalPoint>& gens, int bound) {
  Check c{"|x| <= N on the bounded component, N=" + std::to_string(N)};
  const Integer n(N);
  const Curve E = family_n::curve_e(n);
  search::enumerate_lattice(E, gens, bound, [&](const search::IndexVector&, const RationalPoint& Q) {
    if (!on_bounded_component(E, Q)) return;
    ++c.samples;
    if (!family_n::ebn_bound_check(n, Q)) c.fail("violated at " + Q.to_string());
    if (!family_n::lemma_invariants(n, Q).identity_minus) c.fail("C^2 != A(A^2-NB^4) at " + Q.to_string());
  });
  if (c.samples == 0) c.fail("no bounded-component points examined");
  return c;
}

Check isogeny_image(long N, const std::vector<RationalPoint>& gens, int bound) {
  Check c{"isogeny image audit, N=" + std::to_string(N)};
  const Integer n(N);
  const Curve E = family_n::curve_e(n);
  const Curve Ep = family_n::curve_e_prime(n);
  search::enumerate_lattice(E, gens, bound, [&](const search::IndexVector&, const RationalPoint& P) {
    if (P.A() == 0) return;
    // phi : E_N -> E'_N, (x, y) -> (y^2/x^2, -y (x^2 + N) / x^2).
    const Rational x = P.x(), y = P.y();
    const Rational X = y * y / (x * x);
    const Rational Y = -y * (x * x + Rational(n)) / (x * x);
    ++c.samples;
    RationalPoint Q;
    try {
      Q = RationalPoint::from_xy(X, Y);
    } catch (const DomainError&) {
      c.fail("phi(P) is not in (A,B,C) shape for " + P.to_string());
      return;
    }
    if (!contains(Ep, Q)) c.fail("phi(P) not on E'_N for " + P.to_string());
    const Rational image = family_n::isogeny_x(n, X);
    if (!family_n::image_on_curve(n, image)) c.fail("image fails the square audit for " + P.to_string());
    if (image != scalar_mul(E, 2, P).x()) c.fail("image is not x(2P) for " + P.to_string());
  });
  return c;
}

Check scan_determinism(const search::ScanConfig& config, const std::vector<unsigned>& workers) {
  Check c{"scan determinism"};
  std::string reference;
  for (unsigned w : workers) {
    search::ScanConfig cfg = config;
    cfg.threads = w;
    search::ScanResult r = search::scan_lattice(cfg);
    std::string csv = report::csv_header() + "\n";
    if (r.best) csv += report::to_csv(*r.best) + "\n";
    for (const auto& idx : r.integral_points) {
      for (auto k : idx) csv += std::to_string(k) + ' ';
      csv += '\n';
    }
    ++c.samples;
    if (w == workers.front())
      reference = csv;
    else if (csv != reference)
      c.fail(config.curve.to_string() + " differs with " + std::to_string(w) + " workers");
  }
  return c;
}

Check scan_determinism_suite() {
  Check total{"scan determinism across 1, 2, 8 workers"};
  const std::vector<unsigned> workers{1, 2, 8};
  const Curve E1 = Curve::parse("[0,0,1,-199,1092]");
  const std::vector<RationalPoint> g1{RationalPoint::parse("-13,38"), RationalPoint::parse("-6,45")};
  const Curve E2 = Curve::parse("[0,0,0,-90,0]");

  std::vector<search::ScanConfig> configs;
  configs.push_back({E1, g1, 30});
  configs.push_back({E1, g1, 30, heights::AtInfinity{}, search::Side::Numerator});
  configs.push_back({E1, g1, 30, heights::AtInfinity{}, search::Side::Denominator, search::Predicate::PrimePower});
  configs.push_back({E2, e90_generators(), 30, RationalPoint::parse("0,0")});
  configs.push_back({Curve::parse("[0,0,1,-7,6]"),
                     {RationalPoint::parse("-2,3"), RationalPoint::parse("-1,3"), RationalPoint::parse("0,2")},
                     8});
  for (const auto& cfg : configs) {
    Check c = scan_determinism(cfg, workers);
    total.samples += c.samples;
    if (!c.ok) total.fail(c.failure);
  }
  return total;
}

}  // namespace props
