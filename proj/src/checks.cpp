#include "locest/checks.hpp"

#include <algorithm>
#include <cmath>

namespace locest {

namespace {
nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}
}  // namespace

bool CheckReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass || c.informational; });
}

nlohmann::json to_json(const CheckResult& c) {
  nlohmann::json j{{"name", c.name},
                   {"pass", c.pass},
                   {"measured", number(c.measured)},
                   {"threshold", number(c.threshold)}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  if (c.informational) j["informational"] = true;
  return j;
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) arr.push_back(locest::to_json(c));
  return {{"report", title}, {"pass", all_pass()}, {"checks", arr}};
}

CheckResult check_le(std::string name, double measured, double threshold, std::string detail) {
  return {std::move(name), measured <= threshold, measured, threshold, std::move(detail)};
}

CheckResult check_ge(std::string name, double measured, double threshold, std::string detail) {
  return {std::move(name), measured >= threshold, measured, threshold, std::move(detail)};
}

}  // namespace locest
