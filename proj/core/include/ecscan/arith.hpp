#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecscan/curve.hpp"

namespace ecscan::arith {

inline constexpr std::uint32_t kDefaultTrialBound = 100000;

/// Primes up to a limit, built once per limit and shared read-only.
const std::vector<std::uint32_t>& primes_up_to(std::uint32_t limit);

/// Baillie-PSW: strong base-2 Miller-Rabin followed by a strong Lucas test
/// with Selfridge parameters. Values below 2 are not prime.
bool is_probable_prime(const Integer& n);

struct PerfectPower {
  Integer base;
  unsigned long exponent = 1;
};

/// Largest k with n = b^k. Requires n >= 2.
PerfectPower perfect_power_decompose(const Integer& n);

struct PrimePower {
  Integer prime;
  unsigned long exponent = 1;
  bool operator==(const PrimePower&) const = default;
};

/// Some(p, k) iff n = p^k with p a probable prime. Requires n >= 2.
std::optional<PrimePower> prime_power_decompose(const Integer& n);

enum class CofactorStatus { Unit, ProbablePrime, Composite };

struct PartialFactorization {
  Integer input;
  std::vector<std::pair<std::uint32_t, unsigned long>> small_factors;
  Integer cofactor;
  CofactorStatus cofactor_status = CofactorStatus::Unit;
};

/// Strips every prime <= bound from |n|. Requires n != 0 and bound >= 2.
PartialFactorization trial_factor(const Integer& n, std::uint32_t bound);

/// Number of distinct prime factors of a denominator, as far as it can be
/// decided without real factorization.
struct LengthClass {
  enum class Kind { Zero, One, AtLeastTwo, Unknown };
  Kind kind = Kind::Unknown;
  PrimePower prime_power;                  // valid for One
  std::pair<Integer, Integer> witnesses;   // valid for AtLeastTwo
  bool probable = false;                   // One relied on a probable-prime test

  static LengthClass zero() { return {Kind::Zero, {}, {}, false}; }
  bool is_one() const { return kind == Kind::One; }
  std::string label() const;
};

LengthClass length_classify(const Integer& B, std::uint32_t trial_bound = kDefaultTrialBound);

/// True iff n has no prime divisor <= bound other than n itself. Cheap
/// pre-filter for primality on very large inputs.
bool passes_trial_division(const Integer& n, std::uint32_t bound);

/// Strict primality predicate used by scans: trial division then BPSW.
bool is_prime_candidate(const Integer& n, std::uint32_t trial_bound = kDefaultTrialBound);

/// Exact integer square root when n is a perfect square.
std::optional<Integer> exact_sqrt(const Integer& n);

std::size_t decimal_digits(const Integer& n);

}  // namespace ecscan::arith
