#include "ecscan/report.hpp"

#include <iomanip>
#include <sstream>

namespace ecscan::report {

using nlohmann::json;

json to_json(const search::ScanRecord& r) {
  return json{{"indices", r.indices},   {"h_bar", r.h_bar},
              {"ratio", r.ratio},       {"A_digits", r.A_digits},
              {"B_digits", r.B_digits}, {"side", r.side},
              {"predicate", r.predicate}, {"predicate_hit", r.predicate_hit},
              {"probable", r.probable}};
}

search::ScanRecord scan_record_from_json(const json& j) {
  search::ScanRecord r;
  j.at("indices").get_to(r.indices);
  j.at("h_bar").get_to(r.h_bar);
  j.at("ratio").get_to(r.ratio);
  j.at("A_digits").get_to(r.A_digits);
  j.at("B_digits").get_to(r.B_digits);
  j.at("side").get_to(r.side);
  j.at("predicate").get_to(r.predicate);
  j.at("predicate_hit").get_to(r.predicate_hit);
  j.at("probable").get_to(r.probable);
  return r;
}

std::string csv_header() { return "indices,h_bar,ratio,B_digits,predicate,probable_flag"; }

std::string to_csv(const search::ScanRecord& r) {
  std::ostringstream os;
  os << '"';
  for (std::size_t i = 0; i < r.indices.size(); ++i) os << (i ? " " : "") << r.indices[i];
  os << '"' << ',' << std::setprecision(17) << r.h_bar << ',' << r.ratio << ',' << r.B_digits << ','
     << r.predicate << ',' << (r.probable ? "probable" : "certain");
  return os.str();
}

json to_json(const heights::HallRecord& r) {
  return json{{"d", r.d.get_str()},
              {"x", r.x.get_str()},
              {"y", r.y.get_str()},
              {"sign_convention", r.sign > 0 ? "x^3+d" : "x^3-d"},
              {"log_x", r.log_x},
              {"ratio", r.ratio}};
}

json to_json(const family_n::LemmaReport& r) {
  return json{{"N", r.N.get_str()},
              {"A", r.A.get_str()},
              {"B", r.B.get_str()},
              {"C", r.C.get_str()},
              {"divides_plus", r.divides_plus},
              {"divides_plus_2adic", r.divides_plus_2adic},
              {"identity_minus", r.identity_minus},
              {"bound_C", r.bound_C},
              {"bound_A", r.bound_A},
              {"log_x_over_log_N", r.log_x_over_log_N}};
}

json curve_info(const Curve& E) {
  RealComponents rc = real_components(E);
  json j{{"curve", E.to_string()},
         {"discriminant", E.delta().get_str()},
         {"abs_discriminant", Integer(abs(E.delta())).get_str()},
         {"j_invariant", E.j().get_str()},
         {"log_abs_discriminant", heights::log_abs(E.delta())},
         {"curve_height", heights::curve_height(E)},
         {"standardized", is_standardized_shape(E)},
         {"real_components", rc.count}};
  if (E.is_short_form() && rc.count == 2)
    j["bounded_component_bound"] = heights::bounded_component_bound(E);
  else
    j["bounded_component_bound"] = nullptr;
  return j;
}

}  // namespace ecscan::report
