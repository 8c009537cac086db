#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ecscan/arith.hpp"
#include "ecscan/curve.hpp"
#include "ecscan/heights.hpp"

namespace ecscan::search {

/// Which coordinate of x = A/B^2 the predicate is applied to.
enum class Side { Denominator, Numerator };
/// Prime: the tested integer is a (probable) prime. PrimePower: it is p^k,
/// i.e. the point has length one.
enum class Predicate { Prime, PrimePower };

std::string to_string(Side s);
std::string to_string(Predicate p);
Side parse_side(const std::string& s);
Predicate parse_predicate(const std::string& s);

using IndexVector = std::vector<std::int64_t>;

struct ScanConfig {
  Curve curve;
  std::vector<RationalPoint> generators;
  /// Per-coordinate bound T of the index box (nmax for EDS scans).
  int bound = 0;
  heights::Target target = heights::AtInfinity{};
  Side side = Side::Denominator;
  Predicate predicate = Predicate::Prime;
  std::uint32_t trial_bound = arith::kDefaultTrialBound;
  unsigned threads = 1;
};

/// One reported extremum. Integers are summarized by their digit counts; the
/// full point is carried separately in ScanResult.
struct ScanRecord {
  IndexVector indices;
  double h_bar = 0;
  double ratio = 0;
  std::size_t A_digits = 0;
  std::size_t B_digits = 0;
  std::string side;
  std::string predicate;
  std::string predicate_hit;
  bool probable = false;

  bool operator==(const ScanRecord&) const = default;
};

struct ScanStats {
  std::uint64_t enumerated = 0;
  std::uint64_t candidates = 0;   // survived the cheap pre-filter
  std::uint64_t tested = 0;       // full predicate evaluations
};

struct ScanResult {
  std::optional<ScanRecord> best;
  RationalPoint best_point;
  /// Points with B = 1, excluded from length-one scans but kept for the
  /// integral-point view.
  std::vector<IndexVector> integral_points;
  ScanStats stats;
};

/// ((2T+1)^r - 1) / 2: the size of the canonical half of the index box.
std::uint64_t lattice_size(std::size_t rank, int bound);

/// True iff the first nonzero coordinate is positive.
bool is_canonical(const IndexVector& v);

/// Visits every nonzero index vector of the canonical half-box, in a fixed
/// order, together with the corresponding point. Each step costs a single
/// group addition: rows advance by adding the last generator and row
/// starts are cached combinations.
void enumerate_lattice(const Curve& curve, const std::vector<RationalPoint>& gens, int bound,
                       const std::function<void(const IndexVector&, const RationalPoint&)>& visit);

/// Generic extremum scan; the three wrappers below pin side and target.
ScanResult scan_lattice(const ScanConfig& config);
ScanResult scan_denominators(ScanConfig config);
ScanResult scan_numerators(ScanConfig config);
ScanResult scan_distance(ScanConfig config);

struct EdsResult {
  std::optional<ScanRecord> best;
  RationalPoint best_point;
  /// Every qualifying multiple, in increasing n.
  std::vector<ScanRecord> hits;
  std::uint64_t integral_multiples = 0;
};

/// Walks nP for 1 <= n <= nmax by repeated addition and applies the
/// predicate to each denominator B_n.
EdsResult eds_scan(const Curve& curve, const RationalPoint& P, int nmax,
                   Predicate predicate = Predicate::Prime,
                   std::uint32_t trial_bound = arith::kDefaultTrialBound, unsigned threads = 1);

/// Default worker count: $ECSCAN_THREADS if set, else hardware concurrency.
unsigned default_threads();

}  // namespace ecscan::search
