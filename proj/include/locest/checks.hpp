#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace locest {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  /// Informational checks are reported but do not decide the report verdict.
  bool informational = false;
};

struct CheckReport {
  std::string title;
  std::vector<CheckResult> checks;

  void add(CheckResult c) { checks.push_back(std::move(c)); }
  bool all_pass() const;
  nlohmann::json to_json() const;
};

nlohmann::json to_json(const CheckResult& c);

/// "measured <= threshold" style record.
CheckResult check_le(std::string name, double measured, double threshold, std::string detail = {});
CheckResult check_ge(std::string name, double measured, double threshold, std::string detail = {});

}  // namespace locest
