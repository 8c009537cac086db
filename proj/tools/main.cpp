// ecscan: command-line driver for the curve, height, family and scan modules.
//
// Exit status: 0 success, 1 verification failure, 2 usage or configuration
// error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ecscan/curve.hpp"
#include "ecscan/family_n.hpp"
#include "ecscan/heights.hpp"
#include "ecscan/report.hpp"
#include "ecscan/search.hpp"
#include "ecscan/tables.hpp"

namespace {

using namespace ecscan;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

std::vector<RationalPoint> parse_points(const std::string& text) {
  std::vector<RationalPoint> pts;
  std::string cur;
  for (char c : text + ";") {
    if (c == ';') {
      if (!cur.empty()) pts.push_back(RationalPoint::parse(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return pts;
}

heights::Target parse_target(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "O") return heights::AtInfinity{};
  return RationalPoint::parse(text);
}

std::string join_indices(const search::IndexVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

void emit_record(std::ostream& out, const std::optional<search::ScanRecord>& rec, const std::string& format) {
  if (format == "json") {
    out << (rec ? report::to_json(*rec).dump() : std::string("null")) << '\n';
    return;
  }
  out << report::csv_header() << '\n';
  if (rec) out << report::to_csv(*rec) << '\n';
}

void dump_point(const std::string& path, const search::IndexVector& idx, const RationalPoint& P) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "indices " << join_indices(idx) << "\nA " << P.A() << "\nB " << P.B() << "\nC " << P.C() << '\n';
}

struct Common {
  unsigned threads = search::default_threads();
  std::uint32_t trial_bound = arith::kDefaultTrialBound;
  std::string format = "csv";
  std::string output;
  std::string dump_full;
};

void add_common(CLI::App* cmd, Common& c, bool with_format = true) {
  cmd->add_option("--threads", c.threads, "Worker threads (default $ECSCAN_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--trial-bound", c.trial_bound, "Trial-division bound")->check(CLI::Range(2U, 100000000U));
  if (with_format) {
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--dump-full", c.dump_full, "Write full A, B, C of the record to this file");
  }
  cmd->add_option("--output,-o", c.output, "Write output here instead of stdout");
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ecscan: exact elliptic-curve point scans and height checks"};
  app.require_subcommand(1);
  Common common;

  // curve info
  auto* curve_cmd = app.add_subcommand("curve", "Curve utilities")->require_subcommand(1);
  auto* curve_info = curve_cmd->add_subcommand("info", "Discriminant, j, heights, components");
  std::string curve_text;
  curve_info->add_option("curve", curve_text, "Tate vector [a1,a2,a3,a4,a6]")->required();
  curve_info->add_option("--output,-o", common.output, "Write output here instead of stdout");

  // scan lattice / scan eds
  auto* scan_cmd = app.add_subcommand("scan", "Extremum scans")->require_subcommand(1);
  auto* scan_lattice = scan_cmd->add_subcommand("lattice", "Scan generator combinations in a box");
  std::string gens_text, side_text = "den", pred_text = "prime", target_text = "inf";
  int bound = 0;
  scan_lattice->add_option("--curve", curve_text, "Tate vector")->required();
  scan_lattice->add_option("--gens", gens_text, "Generators \"x1,y1;x2,y2[;x3,y3]\"")->required();
  scan_lattice->add_option("--bound", bound, "Per-index bound T")->required()->check(CLI::PositiveNumber);
  scan_lattice->add_option("--side", side_text, "Integer the predicate tests")->check(CLI::IsMember({"den", "num"}));
  scan_lattice->add_option("--predicate", pred_text, "Predicate")->check(CLI::IsMember({"prime", "prime-power"}));
  scan_lattice->add_option("--target", target_text, "inf or a finite point \"x,y\"");
  add_common(scan_lattice, common);

  auto* scan_eds = scan_cmd->add_subcommand("eds", "Scan multiples nP of one point");
  std::string gen_text;
  int nmax = 100;
  bool list_hits = false;
  scan_eds->add_option("--curve", curve_text, "Tate vector")->required();
  scan_eds->add_option("--gen", gen_text, "Point \"x,y\"")->required();
  scan_eds->add_option("--nmax", nmax, "Largest multiple")->check(CLI::PositiveNumber);
  scan_eds->add_option("--predicate", pred_text, "Predicate")->check(CLI::IsMember({"prime", "prime-power"}));
  scan_eds->add_flag("--hits", list_hits, "Emit every qualifying n, not only the extremum");
  add_common(scan_eds, common);

  // hall verify
  auto* hall_cmd = app.add_subcommand("hall", "Integral points on Mordell curves")->require_subcommand(1);
  auto* hall_verify = hall_cmd->add_subcommand("verify", "Check one (d, x) pair");
  std::string d_text, x_text;
  hall_verify->add_option("--d", d_text, "d")->required();
  hall_verify->add_option("--x", x_text, "x")->required();

  // verify lemma
  auto* verify_cmd = app.add_subcommand("verify", "Empirical checks")->require_subcommand(1);
  auto* verify_lemma = verify_cmd->add_subcommand("lemma", "Doubling-lemma checks on y^2 = x^3 - N x");
  std::string n_text;
  int lemma_bound = 10;
  verify_lemma->add_option("--N", n_text, "N")->required();
  verify_lemma->add_option("--gens", gens_text, "Generators \"x1,y1;x2,y2\"")->required();
  verify_lemma->add_option("--bound", lemma_bound, "Per-index bound")->check(CLI::PositiveNumber);
  add_common(verify_lemma, common, false);

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "Re-run a reference table row by row");
  std::string table_text, fixtures_path, rows_text, mode_text = "prime";
  int repro_bound = 0;
  repro->add_option("table", table_text, "hall|rank2_den|rank2_num|rank3|eds|repelling")->required();
  repro->add_option("--bound,--nmax", repro_bound, "Override the box bound (nmax for eds)")->check(CLI::PositiveNumber);
  repro->add_option("--predicate", mode_text, "prime|prime-power|both")
      ->check(CLI::IsMember({"prime", "prime-power", "both"}));
  repro->add_option("--rows", rows_text, "Comma-separated 1-based rows (default all)");
  repro->add_option("--fixtures", fixtures_path, "Table fixture file");
  add_common(repro, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    Output out(common.output);
    if (curve_info->parsed()) {
      out.get() << report::curve_info(Curve::parse(curve_text)).dump(2) << '\n';
      return kOk;
    }
    if (scan_lattice->parsed()) {
      search::ScanConfig cfg{Curve::parse(curve_text), parse_points(gens_text), bound};
      cfg.side = search::parse_side(side_text);
      cfg.predicate = search::parse_predicate(pred_text);
      cfg.target = parse_target(target_text);
      cfg.trial_bound = common.trial_bound;
      cfg.threads = common.threads;
      auto res = search::scan_lattice(cfg);
      emit_record(out.get(), res.best, common.format);
      if (!common.dump_full.empty() && res.best) dump_point(common.dump_full, res.best->indices, res.best_point);
      return kOk;
    }
    if (scan_eds->parsed()) {
      auto res = search::eds_scan(Curve::parse(curve_text), RationalPoint::parse(gen_text), nmax,
                                  search::parse_predicate(pred_text), common.trial_bound, common.threads);
      if (list_hits) {
        if (common.format == "json") {
          nlohmann::json arr = nlohmann::json::array();
          for (const auto& h : res.hits) arr.push_back(report::to_json(h));
          out.get() << nlohmann::json{{"best", res.best ? report::to_json(*res.best) : nlohmann::json()},
                                      {"hits", arr}}
                           .dump()
                    << '\n';
        } else {
          out.get() << report::csv_header() << '\n';
          for (const auto& h : res.hits) out.get() << report::to_csv(h) << '\n';
        }
      } else {
        emit_record(out.get(), res.best, common.format);
      }
      if (!common.dump_full.empty() && res.best) dump_point(common.dump_full, res.best->indices, res.best_point);
      return kOk;
    }
    if (hall_verify->parsed()) {
      try {
        auto rec = heights::hall_verify(Integer(d_text), Integer(x_text));
        out.get() << report::to_json(rec).dump() << '\n';
        return kOk;
      } catch (const DomainError& e) {
        std::cerr << "hall verify: " << e.what() << '\n';
        return kVerifyFailed;
      }
    }
    if (verify_lemma->parsed()) {
      Integer N(n_text);
      Curve E = family_n::curve_e(N);
      auto gens = parse_points(gens_text);
      for (const auto& g : gens) {
        if (!contains(E, g)) throw DomainError("generator " + g.to_string() + " is not on E_N");
      }
      bool violations = false;
      search::enumerate_lattice(E, gens, lemma_bound, [&](const search::IndexVector& idx, const RationalPoint& P) {
        if (P.is_identity() || P.C() == 0) return;
        auto len = arith::length_classify(P.B(), common.trial_bound);
        if (len.kind != arith::LengthClass::Kind::Zero && !len.is_one()) return;
        auto len2 = arith::length_classify(dbl(E, P).B(), common.trial_bound);
        if (len2.kind != arith::LengthClass::Kind::Zero && !len2.is_one()) return;
        auto rep = family_n::lemma_invariants(N, P);
        auto j = report::to_json(rep);
        j["indices"] = idx;
        out.get() << j.dump() << '\n';
        violations = violations || !rep.identity_minus;
      });
      return violations ? kVerifyFailed : kOk;
    }
    if (repro->parsed()) {
      auto fx = tables::Fixtures::load(fixtures_path.empty() ? tables::default_fixture_path() : fixtures_path);
      tables::ReproduceOptions opts;
      if (repro_bound > 0) opts.bound = repro_bound;
      opts.predicate = tables::parse_predicate_mode(mode_text);
      opts.threads = common.threads;
      opts.trial_bound = common.trial_bound;
      if (!rows_text.empty()) {
        for (char& c : rows_text) {
          if (c == ',') c = ' ';
        }
        std::istringstream is(rows_text);
        std::size_t r;
        while (is >> r) opts.rows.push_back(r);
      }
      auto outcomes = tables::reproduce(fx, tables::parse_table_id(table_text), opts, &out.get());
      std::size_t pass = 0, fail = 0, skipped = 0;
      for (const auto& o : outcomes) {
        if (o.status == tables::RowStatus::Pass) ++pass;
        if (o.status == tables::RowStatus::Fail) ++fail;
        if (o.status == tables::RowStatus::Skipped) ++skipped;
      }
      out.get() << table_text << ": " << pass << " passed, " << fail << " failed, " << skipped << " skipped\n";
      return fail == 0 ? kOk : kVerifyFailed;
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
