#include "qoper/report.hpp"

#include <algorithm>
#include <cmath>

namespace qoper {

Check& Report::add(std::string name, std::string anchor, double residual, double tol) {
  // NaN residuals must fail
  bool ok = std::isfinite(residual) && residual <= tol;
  checks.push_back({std::move(name), std::move(anchor), residual, tol, ok});
  return checks.back();
}

Check& Report::add_flag(std::string name, std::string anchor, bool ok) {
  checks.push_back({std::move(name), std::move(anchor), ok ? 0.0 : 1.0, 0.0, ok});
  return checks.back();
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

double Report::max_residual() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.max_residual);
  return m;
}

nlohmann::json to_json(const Check& c) {
  nlohmann::json j;
  j["name"] = c.name;
  j["anchor"] = c.anchor;
  j["max_residual"] = c.max_residual;
  j["tolerance"] = c.tolerance;
  j["pass"] = c.pass;
  return j;
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) j["checks"].push_back(to_json(c));
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (!r.data.empty()) j["data"] = r.data;
  return j;
}

}  // namespace qoper
