#include "emcf/report.hpp"

#include <cstdio>

namespace emcf {

Json RunManifest::to_json() const {
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", wall_seconds);
  Json j;
  j["command"] = command;
  j["config"] = config;
  j["digit_file_hash"] = digit_file_hash;
  j["cf_file_hash"] = cf_file_hash;
  j["wall_seconds"] = std::string(wall);
  j["outcome"] = outcome;
  return j;
}

Json to_json(const TableRow& row) {
  Json j;
  j["N"] = row.N.get_str();
  j["j"] = std::to_string(row.j);
  j["a_next"] = row.a_next.get_str();
  j["q_mantissa"] = row.mantissa_string();
  j["q_exponent"] = std::to_string(row.q_exponent);
  j["q_mod6"] = row.q_mod6 > 0 ? "+1" : "-1";
  j["violating_prime"] = row.violating_prime ? Json(std::to_string(*row.violating_prime)) : Json(nullptr);
  j["order_checked"] = row.order_checked;
  j["exact_magnitude"] = row.exact_magnitude;
  return j;
}

Json to_json(const MBound& bound) {
  Json j;
  j["mantissa"] = bound.mantissa_string();
  j["exponent"] = std::to_string(bound.exponent);
  j["log10"] = bound.log10;
  return j;
}

Json to_json(const ScanConfig& cfg) {
  Json j;
  j["N"] = cfg.N.get_str();
  j["digits"] = std::to_string(cfg.digit_budget);
  j["prime_bound"] = std::to_string(cfg.prime_bound);
  j["method"] = cfg.method == CfMethod::hgcd ? "hgcd" : "quadratic";
  j["threshold"] = cfg.threshold().get_str();
  return j;
}

Json to_json(const ScanResult& result) {
  Json j;
  j["status"] = to_string(result.status);
  j["certified_terms"] = std::to_string(result.certified_terms);
  j["tracked_primes"] = std::to_string(result.tracked_primes);
  Json rows = Json::array();
  for (const auto& row : result.candidates) rows.push_back(to_json(row));
  j["candidates"] = rows;
  j["accepted"] = result.accepted ? to_json(*result.accepted) : Json(nullptr);
  j["log10_m_bound"] = result.bound ? Json(result.bound->log10) : Json(nullptr);
  j["m_bound"] = result.bound ? to_json(*result.bound) : Json(nullptr);
  if (!result.note.empty()) j["note"] = result.note;
  return j;
}

Json to_json(const RealRoot& root, int digits) {
  Json j;
  j["m"] = std::to_string(root.m);
  j["k"] = root.k.str(digits);
  j["residual"] = root.residual.str(6);
  j["C_m"] = root.C_m.str(digits / 2);
  j["exact_integer"] = root.exact_integer;
  return j;
}

Json to_json(const OmegaBound& bound) {
  Json j;
  j["omega"] = std::to_string(bound.omega);
  j["tie"] = bound.tie;
  j["branch"] = bound.branch;
  return j;
}

Json make_report(const RunManifest& manifest, Json payload) {
  Json j;
  j["manifest"] = manifest.to_json();
  j["result"] = std::move(payload);
  return j;
}

std::string deterministic_dump(const Json& report) {
  Json copy = report;
  if (copy.contains("manifest")) copy["manifest"].erase("wall_seconds");
  return copy.dump(2);
}

}  // namespace emcf
