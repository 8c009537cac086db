#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "ecscan/family_n.hpp"
#include "ecscan/heights.hpp"
#include "ecscan/search.hpp"

// JSON and CSV renderings of the records the CLI emits.
namespace ecscan::report {

nlohmann::json to_json(const search::ScanRecord& r);
search::ScanRecord scan_record_from_json(const nlohmann::json& j);

/// Column header and row for `--format csv`.
std::string csv_header();
std::string to_csv(const search::ScanRecord& r);

nlohmann::json to_json(const heights::HallRecord& r);
nlohmann::json to_json(const family_n::LemmaReport& r);

/// Discriminant, j, log|disc|, h(E), 4h(E) when defined, standardized-shape
/// flag and the real component count.
nlohmann::json curve_info(const Curve& E);

}  // namespace ecscan::report
