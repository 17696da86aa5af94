#pragma once

// JSON report payloads. Every numeric field is a decimal string.

#include <json.hpp>

#include <string>

#include "emcf/asymptotics.hpp"
#include "emcf/omega.hpp"
#include "emcf/scanner.hpp"

namespace emcf {

using Json = nlohmann::json;

struct RunManifest {
  std::string command;
  Json config = Json::object();
  std::string digit_file_hash;
  std::string cf_file_hash;
  double wall_seconds = 0.0;
  std::string outcome;

  /// Wall time is rendered with millisecond resolution.
  Json to_json() const;
};

Json to_json(const TableRow& row);
Json to_json(const MBound& bound);
Json to_json(const ScanConfig& cfg);
Json to_json(const ScanResult& result);
Json to_json(const RealRoot& root, int digits);
Json to_json(const OmegaBound& bound);

/// {"manifest": ..., "result": payload}
Json make_report(const RunManifest& manifest, Json payload);

/// Same report with the manifest's wall time removed; two runs on identical
/// inputs produce identical strings.
std::string deterministic_dump(const Json& report);

}  // namespace emcf
