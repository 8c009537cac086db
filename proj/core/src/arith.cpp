#include "ecscan/arith.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace ecscan::arith {

namespace {

std::vector<std::uint32_t> sieve(std::uint32_t limit) {
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

// Groups consecutive primes so that each group's product fits in one limb;
// one mpz_tdiv_ui per group replaces one pass per prime.
struct PrimeBatch {
  unsigned long product;
  std::size_t first;
  std::size_t last;  // exclusive
};

struct BatchedPrimes {
  const std::vector<std::uint32_t>* primes;
  std::vector<PrimeBatch> batches;
};

const BatchedPrimes& batched_primes(std::uint32_t limit) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::unique_ptr<BatchedPrimes>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[limit];
  if (!slot) {
    auto bp = std::make_unique<BatchedPrimes>();
    bp->primes = &primes_up_to(limit);
    const auto& ps = *bp->primes;
    std::size_t i = 0;
    while (i < ps.size()) {
      unsigned long prod = 1;
      std::size_t start = i;
      while (i < ps.size() && prod <= (~0UL) / ps[i]) prod *= ps[i++];
      bp->batches.push_back({prod, start, i});
    }
    slot = std::move(bp);
  }
  return *slot;
}

void half_mod(Integer& v, const Integer& n) {
  if (mpz_odd_p(v.get_mpz_t())) v += n;
  mpz_fdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), 1);
}

bool strong_base2(const Integer& n) {
  Integer d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Integer x;
  Integer two = 2;
  mpz_powm(x.get_mpz_t(), two.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  Integer nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

bool strong_lucas_selfridge(const Integer& n) {
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  long D = 5;
  for (;;) {
    int j = mpz_si_kronecker(D, n.get_mpz_t());
    if (j == -1) break;
    if (j == 0) {
      Integer absD = D < 0 ? -D : D;
      if (absD != n) return false;
    }
    D = D > 0 ? -(D + 2) : -(D - 2);
  }
  const long P = 1;
  const long Q = (1 - D) / 4;

  Integer d = n + 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  Integer U = 1, V = P, Qk = Q;
  Integer bigD = D;
  Qk %= n;
  if (Qk < 0) Qk += n;
  Integer Qn = Qk;
  for (long bit = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 2; bit >= 0; --bit) {
    U = U * V % n;
    V = (V * V - 2 * Qk) % n;
    Qk = Qk * Qk % n;
    if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
      Integer U1 = P * U + V;
      Integer V1 = bigD * U + P * V;
      half_mod(U1, n);
      half_mod(V1, n);
      U = U1 % n;
      V = V1 % n;
      Qk = Qk * Qn % n;
    }
  }
  if (U % n == 0 || V % n == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    V = (V * V - 2 * Qk) % n;
    Qk = Qk * Qk % n;
    if (V == 0) return true;
  }
  return false;
}

}  // namespace

const std::vector<std::uint32_t>& primes_up_to(std::uint32_t limit) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::unique_ptr<const std::vector<std::uint32_t>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[limit];
  if (!slot) slot = std::make_unique<const std::vector<std::uint32_t>>(sieve(limit));
  return *slot;
}

bool is_probable_prime(const Integer& n) {
  if (n < 2) return false;
  static constexpr unsigned kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  for (unsigned p : kSmall) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n < 53 * 53) return true;
  return strong_base2(n) && strong_lucas_selfridge(n);
}

std::optional<Integer> exact_sqrt(const Integer& n) {
  if (n < 0 || !mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

PerfectPower perfect_power_decompose(const Integer& n) {
  if (n < 2) throw DomainError("perfect_power_decompose requires n >= 2");
  PerfectPower out{n, 1};
  if (!mpz_perfect_power_p(n.get_mpz_t())) return out;
  std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  const auto& ks = primes_up_to(static_cast<std::uint32_t>(bits + 1));
  Integer root;
  for (std::uint32_t k : ks) {
    if (k > mpz_sizeinbase(out.base.get_mpz_t(), 2)) break;
    while (out.base >= 2 && mpz_root(root.get_mpz_t(), out.base.get_mpz_t(), k)) {
      out.base = root;
      out.exponent *= k;
    }
  }
  return out;
}

std::optional<PrimePower> prime_power_decompose(const Integer& n) {
  PerfectPower pp = perfect_power_decompose(n);
  if (!is_probable_prime(pp.base)) return std::nullopt;
  return PrimePower{pp.base, pp.exponent};
}

PartialFactorization trial_factor(const Integer& n, std::uint32_t bound) {
  if (n == 0) throw DomainError("trial_factor: zero input");
  if (bound < 2) throw DomainError("trial_factor: bound must be >= 2");
  PartialFactorization out;
  out.input = abs(n);
  Integer rest = out.input;
  const auto& bp = batched_primes(bound);
  const auto& ps = *bp.primes;
  for (const auto& batch : bp.batches) {
    if (rest == 1) break;
    unsigned long r = mpz_tdiv_ui(rest.get_mpz_t(), batch.product);
    for (std::size_t i = batch.first; i < batch.last; ++i) {
      std::uint32_t p = ps[i];
      if (r % p != 0) continue;
      unsigned long e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      }
      out.small_factors.emplace_back(p, e);
    }
    // Once rest < (next prime)^2 it is 1 or prime.
    if (batch.last < ps.size()) {
      Integer next = ps[batch.last];
      if (rest < next * next) {
        if (rest > 1 && rest <= bound) {
          out.small_factors.emplace_back(static_cast<std::uint32_t>(rest.get_ui()), 1);
          rest = 1;
        }
        break;
      }
    }
  }
  out.cofactor = rest;
  if (rest == 1)
    out.cofactor_status = CofactorStatus::Unit;
  else if (is_probable_prime(rest))
    out.cofactor_status = CofactorStatus::ProbablePrime;
  else
    out.cofactor_status = CofactorStatus::Composite;
  return out;
}

std::string LengthClass::label() const {
  switch (kind) {
    case Kind::Zero:
      return "zero";
    case Kind::One:
      return "one";
    case Kind::AtLeastTwo:
      return "at_least_two";
    case Kind::Unknown:
      break;
  }
  return "unknown";
}

LengthClass length_classify(const Integer& Bin, std::uint32_t trial_bound) {
  if (Bin == 0) throw DomainError("length_classify: zero input");
  Integer B = abs(Bin);
  if (B == 1) return LengthClass::zero();

  LengthClass out;
  const auto& bp = batched_primes(trial_bound);
  const auto& ps = *bp.primes;
  // Only the first one or two small primes matter, so this stops early
  // instead of running a full trial_factor.
  std::vector<std::pair<std::uint32_t, unsigned long>> found;
  Integer rest = B;
  for (const auto& batch : bp.batches) {
    unsigned long r = mpz_tdiv_ui(rest.get_mpz_t(), batch.product);
    for (std::size_t i = batch.first; i < batch.last && found.size() < 2; ++i) {
      std::uint32_t p = ps[i];
      if (r % p != 0) continue;
      unsigned long e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      }
      found.emplace_back(p, e);
    }
    if (found.size() >= 2 || rest == 1) break;
  }

  if (!found.empty()) {
    Integer part;
    mpz_ui_pow_ui(part.get_mpz_t(), found[0].first, found[0].second);
    if (found.size() == 1 && rest == 1) {
      out.kind = LengthClass::Kind::One;
      out.prime_power = {Integer(found[0].first), found[0].second};
      return out;
    }
    out.kind = LengthClass::Kind::AtLeastTwo;
    out.witnesses = {part, B / part};
    return out;
  }

  if (auto pp = prime_power_decompose(B)) {
    out.kind = LengthClass::Kind::One;
    out.prime_power = *pp;
    Integer b = trial_bound;
    out.probable = pp->prime > b * b;
    return out;
  }
  out.kind = LengthClass::Kind::Unknown;
  return out;
}

bool passes_trial_division(const Integer& n, std::uint32_t bound) {
  Integer m = abs(n);
  if (m < 2) return false;
  const auto& bp = batched_primes(bound);
  const auto& ps = *bp.primes;
  for (const auto& batch : bp.batches) {
    unsigned long r = mpz_tdiv_ui(m.get_mpz_t(), batch.product);
    for (std::size_t i = batch.first; i < batch.last; ++i) {
      if (r % ps[i] == 0) return m == ps[i];
    }
    if (batch.last < ps.size()) {
      Integer next = ps[batch.last];
      if (m < next * next) return true;
    }
  }
  return true;
}

bool is_prime_candidate(const Integer& n, std::uint32_t trial_bound) {
  Integer m = abs(n);
  if (!passes_trial_division(m, trial_bound)) return false;
  return is_probable_prime(m);
}

std::size_t decimal_digits(const Integer& n) {
  if (n == 0) return 1;
  std::size_t d = mpz_sizeinbase(n.get_mpz_t(), 10);
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, d - 1);
  return abs(n) < p ? d - 1 : d;
}

}  // namespace ecscan::arith
