#pragma once

// Named runtime invariant checks behind `emcf verify`.

#include <functional>
#include <string>
#include <vector>

namespace emcf {

enum class VerifyLevel { quick, full };

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Suite names accepted by run_verify besides "all".
std::vector<std::string> verify_suites();

/// Runs every check of `suite` ("all" for every suite) at `level`; each
/// result is passed to `sink` as soon as it is known.
std::vector<CheckResult> run_verify(VerifyLevel level, const std::string& suite = "all",
                                    const std::function<void(const CheckResult&)>& sink = {});

}  // namespace emcf
