#include "ecscan/tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "parse_util.hpp"

#ifndef ECSCAN_SOURCE_DATA_DIR
#define ECSCAN_SOURCE_DATA_DIR ""
#endif
#ifndef ECSCAN_INSTALL_DATA_DIR
#define ECSCAN_INSTALL_DATA_DIR ""
#endif

namespace ecscan::tables {

std::string to_string(TableId id) {
  switch (id) {
    case TableId::Hall:
      return "hall";
    case TableId::Rank2Den:
      return "rank2_den";
    case TableId::Rank2Num:
      return "rank2_num";
    case TableId::Rank3:
      return "rank3";
    case TableId::Eds:
      return "eds";
    case TableId::Repelling:
      return "repelling";
  }
  return "?";
}

TableId parse_table_id(const std::string& s) {
  for (TableId id : all_tables()) {
    if (to_string(id) == s) return id;
  }
  throw DomainError("unknown table '" + s + "' (expected hall|rank2_den|rank2_num|rank3|eds|repelling)");
}

const std::vector<TableId>& all_tables() {
  static const std::vector<TableId> ids{TableId::Hall, TableId::Rank2Den, TableId::Rank2Num,
                                        TableId::Rank3, TableId::Eds,      TableId::Repelling};
  return ids;
}

std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Pass:
      return "PASS";
    case RowStatus::Fail:
      return "FAIL";
    case RowStatus::Skipped:
      return "SKIPPED";
  }
  return "?";
}

PredicateMode parse_predicate_mode(const std::string& s) {
  if (s == "prime") return PredicateMode::Prime;
  if (s == "prime-power" || s == "prime_power") return PredicateMode::PrimePower;
  if (s == "both") return PredicateMode::Both;
  throw DomainError("unknown predicate mode '" + s + "' (expected prime|prime-power|both)");
}

int default_bound(TableId id) {
  switch (id) {
    case TableId::Rank2Den:
    case TableId::Rank2Num:
      return 150;
    case TableId::Rank3:
    case TableId::Repelling:
    case TableId::Eds:
      return 100;
    case TableId::Hall:
      return 0;
  }
  return 0;
}

namespace {

search::IndexVector parse_index(const std::string& s) {
  search::IndexVector v;
  for (const auto& part : detail::split(s, ',')) v.push_back(detail::parse_integer(part).get_si());
  return v;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = std::stod(detail::strip(s), &used);
  return v;
}

FixtureRow parse_row(TableId id, const std::vector<std::string>& f) {
  auto need = [&](std::size_t n) {
    if (f.size() != n)
      throw std::runtime_error("table " + to_string(id) + ": expected " + std::to_string(n) + " fields, got " +
                               std::to_string(f.size()));
  };
  FixtureRow row;
  row.table = id;
  switch (id) {
    case TableId::Hall:
      need(4);
      row.d = detail::parse_integer(f[0]);
      row.x = detail::parse_integer(f[1]);
      row.log_x = parse_double(f[2]);
      row.ratio = parse_double(f[3]);
      break;
    case TableId::Rank2Den:
    case TableId::Rank2Num:
    case TableId::Repelling:
      need(7);
      row.curve = Curve::parse(f[0]);
      row.generators = {RationalPoint::parse(f[1]), RationalPoint::parse(f[2])};
      row.abs_disc = detail::parse_integer(f[3]);
      row.expected_index = parse_index(f[4]);
      row.h_bar = parse_double(f[5]);
      row.ratio = parse_double(f[6]);
      break;
    case TableId::Rank3:
      need(7);
      row.curve = Curve::parse(f[0]);
      row.generators = {RationalPoint::parse(f[1]), RationalPoint::parse(f[2]), RationalPoint::parse(f[3])};
      row.expected_index = parse_index(f[4]);
      row.h_bar = parse_double(f[5]);
      row.ratio = parse_double(f[6]);
      break;
    case TableId::Eds:
      need(5);
      row.curve = Curve::parse(f[0]);
      row.generators = {RationalPoint::parse(f[1])};
      row.abs_disc = detail::parse_integer(f[2]);
      row.expected_index = parse_index(f[3]);
      row.ratio = parse_double(f[4]);
      break;
  }
  return row;
}

std::string fmt3(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << v;
  return os.str();
}

std::string index_string(const search::IndexVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

bool same_up_to_global_sign(const search::IndexVector& a, const search::IndexVector& b) {
  if (a.size() != b.size()) return false;
  bool plus = true, minus = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    plus = plus && a[i] == b[i];
    minus = minus && a[i] == -b[i];
  }
  return plus || minus;
}

struct Attempt {
  std::optional<search::ScanRecord> record;
  bool pass = false;
  std::string got;
  std::string why;
};

Attempt check_curve_row(const FixtureRow& row, const std::optional<search::ScanRecord>& rec,
                        const Tolerances& tol) {
  Attempt a;
  a.record = rec;
  if (!rec) {
    a.got = "no qualifying point";
    a.why = "no hit in the box";
    return a;
  }
  std::ostringstream got;
  got << index_string(rec->indices);
  if (row.h_bar) got << " h=" << fmt3(rec->h_bar);
  got << " ratio=" << fmt3(rec->ratio);
  a.got = got.str();

  std::vector<std::string> issues;
  if (row.table == TableId::Eds) {
    if (rec->indices != row.expected_index) issues.push_back("index differs");
  } else if (!index_in_orbit(rec->indices, row.expected_index)) {
    issues.push_back("index outside sign orbit");
  }
  if (row.h_bar && std::fabs(rec->h_bar - *row.h_bar) > tol.h_bar) issues.push_back("h_bar off");
  if (std::fabs(rec->ratio - row.ratio) > tol.ratio) issues.push_back("ratio off");
  a.pass = issues.empty();
  for (std::size_t i = 0; i < issues.size(); ++i) a.why += (i ? ", " : "") + issues[i];
  return a;
}

Attempt run_curve_row(const FixtureRow& row, search::Predicate pred, int bound, const ReproduceOptions& opts) {
  const Curve& E = *row.curve;
  if (row.table == TableId::Eds) {
    auto res = search::eds_scan(E, row.generators[0], bound, pred, opts.trial_bound, opts.threads);
    return check_curve_row(row, res.best, opts.tol);
  }
  search::ScanConfig cfg{E, row.generators, bound};
  cfg.predicate = pred;
  cfg.trial_bound = opts.trial_bound;
  cfg.threads = opts.threads;
  search::ScanResult res;
  switch (row.table) {
    case TableId::Rank2Num:
      res = search::scan_numerators(cfg);
      break;
    case TableId::Repelling:
      cfg.target = RationalPoint::from_abc(0, 1, 0);
      res = search::scan_distance(cfg);
      break;
    default:
      res = search::scan_denominators(cfg);
      break;
  }
  return check_curve_row(row, res.best, opts.tol);
}

RowOutcome reproduce_hall(const FixtureRow& row, const Tolerances& tol) {
  RowOutcome o;
  o.expected = "d=" + row.d.get_str() + " x=" + row.x.get_str() + " log_x=" + fmt3(row.log_x) +
               " ratio=" + fmt3(row.ratio);
  try {
    auto rec = heights::hall_verify(row.d, row.x);
    o.got = std::string("y^2 = x^3 ") + (rec.sign > 0 ? "+ d" : "- d") + " log_x=" + fmt3(rec.log_x) +
            " ratio=" + fmt3(rec.ratio);
    bool ok = std::fabs(rec.log_x - row.log_x) <= tol.log_x && std::fabs(rec.ratio - row.ratio) <= tol.ratio;
    o.status = ok ? RowStatus::Pass : RowStatus::Fail;
    if (!ok) o.note = "log_x or ratio outside tolerance";
  } catch (const DomainError& e) {
    o.status = RowStatus::Fail;
    o.got = "no square";
    o.note = e.what();
  }
  return o;
}

}  // namespace

Fixtures Fixtures::parse(std::istream& in, const std::string& origin) {
  Fixtures fx;
  std::optional<TableId> current;
  std::string line;
  std::size_t lineno = 0;
  std::size_t counter = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = detail::strip(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.front() == '[' && t.back() == ']' && t.find(';') == std::string::npos) {
      try {
        current = parse_table_id(t.substr(1, t.size() - 2));
      } catch (const DomainError& e) {
        throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": " + e.what());
      }
      counter = 0;
      continue;
    }
    if (!current) throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": row outside a [table] section");
    try {
      FixtureRow row = parse_row(*current, detail::split(t, ';'));
      row.number = ++counter;
      fx.rows_.push_back(std::move(row));
    } catch (const std::exception& e) {
      throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return fx;
}

Fixtures Fixtures::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("fixture file not found: " + path);
  return parse(in, path);
}

std::vector<FixtureRow> Fixtures::rows_for(TableId id) const {
  std::vector<FixtureRow> out;
  for (const auto& r : rows_) {
    if (r.table == id) out.push_back(r);
  }
  return out;
}

std::string default_fixture_path() {
  if (const char* env = std::getenv("ECSCAN_FIXTURES")) return env;
  for (const char* dir : {ECSCAN_SOURCE_DATA_DIR, ECSCAN_INSTALL_DATA_DIR}) {
    if (*dir == '\0') continue;
    std::filesystem::path p = std::filesystem::path(dir) / "tables.txt";
    if (std::filesystem::exists(p)) return p.string();
  }
  return "tables.txt";
}

bool index_in_orbit(const search::IndexVector& found, const search::IndexVector& expected) {
  if (found.size() != expected.size()) return false;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (std::llabs(found[i]) != std::llabs(expected[i])) return false;
  }
  return true;
}

std::vector<RowOutcome> reproduce(const Fixtures& fixtures, TableId id, const ReproduceOptions& opts,
                                  std::ostream* progress) {
  std::vector<RowOutcome> out;
  const int bound = opts.bound.value_or(default_bound(id));
  for (const auto& row : fixtures.rows_for(id)) {
    if (!opts.rows.empty() &&
        std::find(opts.rows.begin(), opts.rows.end(), row.number) == opts.rows.end())
      continue;
    RowOutcome o;
    if (id == TableId::Hall) {
      o = reproduce_hall(row, opts.tol);
    } else {
      std::ostringstream exp;
      exp << row.curve->to_string() << ' ' << index_string(row.expected_index);
      if (row.h_bar) exp << " h=" << fmt3(*row.h_bar);
      exp << " ratio=" << fmt3(row.ratio);
      o.expected = exp.str();

      if (row.abs_disc && abs(row.curve->delta()) != *row.abs_disc) {
        o.status = RowStatus::Fail;
        o.got = "|disc|=" + Integer(abs(row.curve->delta())).get_str();
        o.note = "discriminant mismatch";
      } else if (auto off = std::find_if(row.generators.begin(), row.generators.end(),
                                         [&](const RationalPoint& g) { return !contains(*row.curve, g); });
                 off != row.generators.end()) {
        o.status = RowStatus::Fail;
        o.note = "tabulated point " + off->to_string() + " is not on the curve";
      } else if (id == TableId::Eds && row.expected_index[0] > bound) {
        o.status = RowStatus::Skipped;
        o.note = "published n=" + std::to_string(row.expected_index[0]) + " exceeds nmax=" + std::to_string(bound);
      } else {
        std::vector<search::Predicate> preds;
        if (opts.predicate != PredicateMode::PrimePower) preds.push_back(search::Predicate::Prime);
        if (opts.predicate != PredicateMode::Prime) preds.push_back(search::Predicate::PrimePower);
        std::vector<std::string> tried;
        for (auto pred : preds) {
          Attempt a = run_curve_row(row, pred, bound, opts);
          o.predicate = search::to_string(pred);
          o.got = a.got;
          o.record = a.record;
          if (a.pass) {
            o.status = RowStatus::Pass;
            break;
          }
          o.status = RowStatus::Fail;
          tried.push_back(search::to_string(pred) + ": " + a.got + " (" + a.why + ")");
        }
        if (o.status == RowStatus::Pass && !tried.empty()) {
          o.note = "diverges under " + tried.front();
        } else if (o.status == RowStatus::Fail) {
          for (std::size_t i = 0; i < tried.size(); ++i) o.note += (i ? "; " : "") + tried[i];
        }
        if (o.status == RowStatus::Pass && id != TableId::Eds && o.record &&
            !same_up_to_global_sign(o.record->indices, row.expected_index)) {
          if (!o.note.empty()) o.note += "; ";
          o.note += "index matched up to generator signs";
        }
      }
    }
    o.table = id;
    o.number = row.number;
    if (progress) *progress << format_outcome(o) << std::endl;
    out.push_back(std::move(o));
  }
  return out;
}

std::string format_outcome(const RowOutcome& o) {
  std::ostringstream os;
  os << to_string(o.table) << " row " << o.number << ": " << to_string(o.status);
  if (!o.predicate.empty()) os << " [" << o.predicate << "]";
  os << " expected " << o.expected;
  if (!o.got.empty()) os << " got " << o.got;
  if (!o.note.empty()) os << " (" << o.note << ")";
  return os.str();
}

}  // namespace ecscan::tables
