#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ecscan/search.hpp"

// Reference-table fixtures and the row-by-row reproduction driver.
namespace ecscan::tables {

enum class TableId { Hall, Rank2Den, Rank2Num, Rank3, Eds, Repelling };

std::string to_string(TableId id);
TableId parse_table_id(const std::string& s);
const std::vector<TableId>& all_tables();

struct FixtureRow {
  TableId table{};
  std::size_t number = 0;  // 1-based within its table
  // hall
  Integer d, x;
  double log_x = 0;
  // curve tables
  std::optional<Curve> curve;
  std::vector<RationalPoint> generators;
  std::optional<Integer> abs_disc;
  search::IndexVector expected_index;  // [n] for eds
  std::optional<double> h_bar;
  double ratio = 0;
};

class Fixtures {
 public:
  /// Throws std::runtime_error when the file is missing or malformed.
  static Fixtures load(const std::string& path);
  static Fixtures parse(std::istream& in, const std::string& origin = "<stream>");

  const std::vector<FixtureRow>& rows() const { return rows_; }
  std::vector<FixtureRow> rows_for(TableId id) const;

 private:
  std::vector<FixtureRow> rows_;
};

/// $ECSCAN_FIXTURES, else the installed or source-tree data file.
std::string default_fixture_path();

struct Tolerances {
  double h_bar = 5e-3;
  double ratio = 2e-3;
  double log_x = 2e-3;
};

enum class PredicateMode { Prime, PrimePower, Both };
PredicateMode parse_predicate_mode(const std::string& s);

struct ReproduceOptions {
  /// Box bound (or nmax for eds). Defaults: 150 rank2, 100 rank3 and
  /// repelling, 100 eds.
  std::optional<int> bound;
  PredicateMode predicate = PredicateMode::Prime;
  unsigned threads = 1;
  std::uint32_t trial_bound = arith::kDefaultTrialBound;
  /// 1-based row numbers to run; empty means all.
  std::vector<std::size_t> rows;
  Tolerances tol;
};

enum class RowStatus { Pass, Fail, Skipped };
std::string to_string(RowStatus s);

struct RowOutcome {
  TableId table{};
  std::size_t number = 0;
  RowStatus status = RowStatus::Fail;
  std::string predicate;  // predicate that produced the compared record
  std::string expected;
  std::string got;
  std::string note;
  std::optional<search::ScanRecord> record;
};

int default_bound(TableId id);

/// |found_i| = |expected_i| for every i: the orbit generated by a global sign
/// change and by negating individual generators.
bool index_in_orbit(const search::IndexVector& found, const search::IndexVector& expected);

/// Runs every selected row of one table. When `progress` is non-null each
/// outcome line is written as soon as it is known.
std::vector<RowOutcome> reproduce(const Fixtures& fixtures, TableId id, const ReproduceOptions& opts,
                                  std::ostream* progress = nullptr);

std::string format_outcome(const RowOutcome& o);

}  // namespace ecscan::tables
