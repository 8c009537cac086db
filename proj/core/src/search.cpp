#include "ecscan/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace ecscan::search {

std::string to_string(Side s) { return s == Side::Denominator ? "den" : "num"; }
std::string to_string(Predicate p) { return p == Predicate::Prime ? "prime" : "prime-power"; }

Side parse_side(const std::string& s) {
  if (s == "den" || s == "denominator") return Side::Denominator;
  if (s == "num" || s == "numerator") return Side::Numerator;
  throw DomainError("unknown side '" + s + "' (expected den|num)");
}

Predicate parse_predicate(const std::string& s) {
  if (s == "prime") return Predicate::Prime;
  if (s == "prime-power" || s == "prime_power") return Predicate::PrimePower;
  throw DomainError("unknown predicate '" + s + "' (expected prime|prime-power)");
}

unsigned default_threads() {
  if (const char* env = std::getenv("ECSCAN_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::uint64_t lattice_size(std::size_t rank, int bound) {
  std::uint64_t side = 2 * static_cast<std::uint64_t>(bound) + 1;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < rank; ++i) total *= side;
  return (total - 1) / 2;
}

bool is_canonical(const IndexVector& v) {
  for (auto c : v) {
    if (c != 0) return c > 0;
  }
  return false;
}

namespace {

using Index = std::array<std::int64_t, 3>;

// Runs f(i) for i in [0, count) on up to `threads` workers. Work items are
// claimed in increasing order; results must be written to per-item slots.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& f) {
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          next.store(count);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::size_t band_count(std::size_t rank, int bound) { return rank == 1 ? 1 : static_cast<std::size_t>(bound) + 1; }

// Walks one band of the canonical half-box: all vectors whose first
// coordinate equals `m` (rank >= 2), or the whole ray (rank 1).
template <class Visit>
void walk_band(const Curve& E, const std::vector<RationalPoint>& gens,
               const std::vector<RationalPoint>& neg_T, int T, std::size_t band, Visit&& visit) {
  const std::size_t rank = gens.size();
  Index idx{0, 0, 0};

  // Consecutive points differ by one generator, so each step knows R - G.
  auto step = [&](RationalPoint& pt, RationalPoint& prev, const RationalPoint& g, bool first) {
    RationalPoint next = first ? add(E, pt, g) : add_advance(E, pt, g, prev);
    prev = std::move(pt);
    pt = std::move(next);
  };
  auto row = [&](RationalPoint pt, std::size_t pos, std::int64_t from, std::int64_t to) {
    RationalPoint prev;
    for (std::int64_t k = from; k <= to; ++k) {
      idx[pos] = k;
      visit(idx, pt);
      if (k < to) step(pt, prev, gens[pos], k == from);
    }
  };

  if (rank == 1) {
    row(gens[0], 0, 1, T);
    return;
  }
  const auto m = static_cast<std::int64_t>(band);
  idx[0] = m;
  if (rank == 2) {
    if (m == 0)
      row(gens[1], 1, 1, T);
    else
      row(add(E, scalar_mul(E, m, gens[0]), neg_T[1]), 1, -T, T);
    return;
  }
  // rank 3
  if (m == 0) {
    idx[1] = 0;
    row(gens[2], 2, 1, T);
    RationalPoint start = add(E, gens[1], neg_T[2]);
    RationalPoint prev;
    for (std::int64_t n = 1; n <= T; ++n) {
      idx[1] = n;
      row(start, 2, -T, T);
      if (n < T) step(start, prev, gens[1], n == 1);
    }
    return;
  }
  // Row starts advance by gens[1] along the third-coordinate -T slice.
  RationalPoint start = add(E, add(E, scalar_mul(E, m, gens[0]), neg_T[1]), neg_T[2]);
  RationalPoint prev;
  for (std::int64_t n = -T; n <= T; ++n) {
    idx[1] = n;
    row(start, 2, -T, T);
    if (n < T) step(start, prev, gens[1], n == -T);
  }
}

std::vector<RationalPoint> negated_bound_multiples(const Curve& E, const std::vector<RationalPoint>& gens, int T) {
  std::vector<RationalPoint> out;
  for (const auto& g : gens) out.push_back(scalar_mul(E, -static_cast<std::int64_t>(T), g));
  return out;
}

void validate(const ScanConfig& c) {
  if (c.generators.empty() || c.generators.size() > 3)
    throw DomainError("scan needs between 1 and 3 generators");
  if (c.bound < 1) throw DomainError("scan bound must be >= 1");
  for (const auto& g : c.generators) {
    if (g.is_identity() || !contains(c.curve, g))
      throw DomainError("generator " + g.to_string() + " is not a point of " + c.curve.to_string());
  }
  if (const auto* d = std::get_if<RationalPoint>(&c.target)) {
    if (!d->is_identity() && !contains(c.curve, *d))
      throw DomainError("target " + d->to_string() + " is not on the curve");
  }
  if (c.trial_bound < 2) throw DomainError("trial bound must be >= 2");
}

const RationalPoint* finite_target(const heights::Target& t) {
  const auto* d = std::get_if<RationalPoint>(&t);
  return (d && !d->is_identity()) ? d : nullptr;
}

// Product of the primes up to 47; one limb.
constexpr unsigned long kTinyPrimorial = 614889782588491410UL;
constexpr unsigned kTinyPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

// Cheap necessary condition for the predicate, using one word-sized
// remainder. Prime: no tiny prime divides n unless n is that prime.
// PrimePower: at most one tiny prime divides n.
bool tiny_prefilter(const Integer& n, Predicate pred) {
  unsigned long r = mpz_tdiv_ui(n.get_mpz_t(), kTinyPrimorial);
  int divisors = 0;
  unsigned last = 0;
  for (unsigned p : kTinyPrimes) {
    if (r % p == 0) {
      ++divisors;
      last = p;
    }
  }
  if (divisors == 0) return true;
  if (pred == Predicate::Prime) return divisors == 1 && n == last;
  return divisors == 1;
}

// Signed score to maximize: log|x| for the point at infinity, -log|x - x(D)|
// for a finite target.
std::optional<double> score(const RationalPoint& Q, const RationalPoint* D) {
  if (!D) {
    if (Q.A() == 0) return std::nullopt;
    return heights::log_abs(Q.A()) - 2.0 * heights::log_abs(Q.B());
  }
  Integer dB2 = D->B() * D->B();
  Integer B2 = Q.B() * Q.B();
  Integer num = Q.A() * dB2 - D->A() * B2;
  if (num == 0) return std::nullopt;
  return heights::log_abs(B2) + heights::log_abs(dB2) - heights::log_abs(num);
}

// Exact comparison of two points by the score; true if a is strictly better.
int compare_exact(const RationalPoint& a, const RationalPoint& b, const RationalPoint* D) {
  if (!D) {
    Rational xa = abs(a.x());
    Rational xb = abs(b.x());
    return cmp(xa, xb);
  }
  Rational da = abs(a.x() - D->x());
  Rational db = abs(b.x() - D->x());
  return -cmp(da, db);
}

struct Candidate {
  double key;
  std::array<std::int32_t, 3> idx;
};

bool candidate_order(const Candidate& a, const Candidate& b) {
  if (a.key != b.key) return a.key > b.key;
  return a.idx < b.idx;
}

struct Verdict {
  bool hit = false;
  bool probable = false;
  std::string label;
};

// 2^64: below this BPSW has no exceptions.
const Integer& bpsw_exact_limit() {
  static const Integer v = Integer(1) << 64;
  return v;
}

Verdict evaluate(const Integer& n, Predicate pred, std::uint32_t trial_bound) {
  Verdict v;
  if (pred == Predicate::Prime) {
    v.hit = arith::is_prime_candidate(n, trial_bound);
    v.label = "prime";
    v.probable = v.hit && abs(n) >= bpsw_exact_limit();
    return v;
  }
  arith::LengthClass lc = arith::length_classify(n, trial_bound);
  v.hit = lc.is_one();
  if (v.hit) {
    v.label = "prime-power^" + std::to_string(lc.prime_power.exponent);
    v.probable = lc.prime_power.prime >= bpsw_exact_limit();
  }
  return v;
}

const Integer& tested_integer(const RationalPoint& Q, Side side, Integer& scratch) {
  if (side == Side::Denominator) return Q.B();
  scratch = abs(Q.A());
  return scratch;
}

ScanRecord make_record(const ScanConfig& c, const IndexVector& idx, const RationalPoint& Q,
                       const Verdict& v) {
  ScanRecord r;
  r.indices = idx;
  r.h_bar = heights::weil_height_from(c.target, Q);
  r.ratio = r.h_bar / heights::log_abs(c.curve.delta());
  r.A_digits = arith::decimal_digits(Q.A());
  r.B_digits = arith::decimal_digits(Q.B());
  r.side = to_string(c.side);
  r.predicate = to_string(c.predicate);
  r.predicate_hit = v.label;
  r.probable = v.probable;
  return r;
}

}  // namespace

void enumerate_lattice(const Curve& curve, const std::vector<RationalPoint>& gens, int bound,
                       const std::function<void(const IndexVector&, const RationalPoint&)>& visit) {
  if (gens.empty() || gens.size() > 3) throw DomainError("enumerate_lattice needs 1 to 3 generators");
  if (bound < 1) return;
  auto neg_T = negated_bound_multiples(curve, gens, bound);
  IndexVector v(gens.size());
  for (std::size_t band = 0; band < band_count(gens.size(), bound); ++band) {
    walk_band(curve, gens, neg_T, bound, band, [&](const Index& idx, const RationalPoint& pt) {
      std::copy_n(idx.begin(), gens.size(), v.begin());
      visit(v, pt);
    });
  }
}

ScanResult scan_lattice(const ScanConfig& c) {
  validate(c);
  const std::size_t rank = c.generators.size();
  const RationalPoint* D = finite_target(c.target);
  const auto neg_T = negated_bound_multiples(c.curve, c.generators, c.bound);
  const std::size_t bands = band_count(rank, c.bound);

  struct BandOut {
    std::vector<Candidate> cands;
    std::vector<IndexVector> integral;
    std::uint64_t enumerated = 0;
  };
  std::vector<BandOut> outs(bands);

  // Pass 1: walk the box, keep a floating-point score for every point that
  // survives the cheap filter.
  parallel_for(bands, c.threads, [&](std::size_t band) {
    BandOut& out = outs[band];
    Integer scratch;
    walk_band(c.curve, c.generators, neg_T, c.bound, band, [&](const Index& idx, const RationalPoint& Q) {
      ++out.enumerated;
      if (Q.is_identity()) return;
      if (c.side == Side::Denominator && Q.B() == 1) {
        out.integral.emplace_back(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(rank));
        return;
      }
      const Integer& n = tested_integer(Q, c.side, scratch);
      if (n <= 1) return;
      if (!tiny_prefilter(n, c.predicate)) return;
      auto key = score(Q, D);
      if (!key) return;
      Candidate cand{*key, {static_cast<std::int32_t>(idx[0]), static_cast<std::int32_t>(idx[1]),
                            static_cast<std::int32_t>(idx[2])}};
      out.cands.push_back(cand);
    });
  });

  ScanResult result;
  std::vector<Candidate> cands;
  for (auto& o : outs) {
    result.stats.enumerated += o.enumerated;
    cands.insert(cands.end(), o.cands.begin(), o.cands.end());
    for (auto& v : o.integral) result.integral_points.push_back(std::move(v));
    o = BandOut{};
  }
  result.stats.candidates = cands.size();
  std::sort(cands.begin(), cands.end(), candidate_order);

  // Pass 2: test candidates in decreasing score until the first hit, then
  // finish the near-ties and pick the exact winner.
  auto to_index = [rank](const Candidate& cand) {
    return IndexVector(cand.idx.begin(), cand.idx.begin() + static_cast<std::ptrdiff_t>(rank));
  };
  struct Eval {
    RationalPoint point;
    Verdict verdict;
  };
  const std::size_t chunk = std::max<std::size_t>(8, 2 * static_cast<std::size_t>(std::max(1U, c.threads)));
  std::optional<double> threshold;
  std::optional<std::size_t> best_pos;
  RationalPoint best_point;
  Verdict best_verdict;

  for (std::size_t start = 0; start < cands.size(); start += chunk) {
    std::size_t end = std::min(cands.size(), start + chunk);
    if (threshold) {
      while (end > start && cands[end - 1].key < *threshold) --end;
      if (end == start) break;
    }
    std::vector<Eval> evals(end - start);
    parallel_for(end - start, c.threads, [&](std::size_t i) {
      const auto idx = to_index(cands[start + i]);
      Eval& e = evals[i];
      e.point = combination(c.curve, c.generators, idx);
      Integer scratch;
      e.verdict = evaluate(tested_integer(e.point, c.side, scratch), c.predicate, c.trial_bound);
    });
    result.stats.tested += end - start;
    for (std::size_t i = 0; i < evals.size(); ++i) {
      if (!evals[i].verdict.hit) continue;
      const std::size_t pos = start + i;
      if (!best_pos) {
        best_pos = pos;
        best_point = evals[i].point;
        best_verdict = evals[i].verdict;
        const double k = cands[pos].key;
        threshold = k - 1e-8 * std::max(1.0, std::fabs(k));
        continue;
      }
      int cmpv = compare_exact(evals[i].point, best_point, D);
      if (cmpv > 0 || (cmpv == 0 && to_index(cands[pos]) < to_index(cands[*best_pos]))) {
        best_pos = pos;
        best_point = evals[i].point;
        best_verdict = evals[i].verdict;
      }
    }
  }

  if (best_pos) {
    result.best = make_record(c, to_index(cands[*best_pos]), best_point, best_verdict);
    result.best_point = best_point;
  }
  return result;
}

ScanResult scan_denominators(ScanConfig config) {
  config.side = Side::Denominator;
  config.target = heights::AtInfinity{};
  return scan_lattice(config);
}

ScanResult scan_numerators(ScanConfig config) {
  config.side = Side::Numerator;
  config.target = heights::AtInfinity{};
  return scan_lattice(config);
}

ScanResult scan_distance(ScanConfig config) {
  if (!finite_target(config.target)) throw DomainError("scan_distance needs a finite target point");
  config.side = Side::Denominator;
  return scan_lattice(config);
}

EdsResult eds_scan(const Curve& curve, const RationalPoint& P, int nmax, Predicate predicate,
                   std::uint32_t trial_bound, unsigned threads) {
  if (P.is_identity() || !contains(curve, P)) throw DomainError("eds_scan: P must be a point of the curve");
  ScanConfig c{curve, {P}, std::max(nmax, 1), heights::AtInfinity{}, Side::Denominator, predicate,
               trial_bound, threads};
  EdsResult out;
  const std::size_t window = std::max<std::size_t>(16, 4 * static_cast<std::size_t>(std::max(1U, threads)));
  RationalPoint cur = P;
  RationalPoint prev;
  std::int64_t n = 1;
  while (n <= nmax) {
    std::vector<std::pair<std::int64_t, RationalPoint>> batch;
    while (n <= nmax && batch.size() < window) {
      if (cur.is_identity()) throw DomainError("eds_scan: P is a torsion point");
      batch.emplace_back(n, cur);
      ++n;
      if (n <= nmax) {
        RationalPoint next = n == 2 ? add(curve, cur, P) : add_advance(curve, cur, P, prev);
        prev = std::move(cur);
        cur = std::move(next);
      }
    }
    std::vector<Verdict> verdicts(batch.size());
    parallel_for(batch.size(), threads, [&](std::size_t i) {
      const Integer& B = batch[i].second.B();
      if (B == 1 || !tiny_prefilter(B, predicate)) return;
      verdicts[i] = evaluate(B, predicate, trial_bound);
    });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const auto& [k, Q] = batch[i];
      if (Q.B() == 1) {
        ++out.integral_multiples;
        continue;
      }
      if (!verdicts[i].hit) continue;
      ScanRecord rec = make_record(c, {k}, Q, verdicts[i]);
      out.hits.push_back(rec);
      if (!out.best || compare_exact(Q, out.best_point, nullptr) > 0) {
        out.best = rec;
        out.best_point = Q;
      }
    }
  }
  return out;
}

}  // namespace ecscan::search
