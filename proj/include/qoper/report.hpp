#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qoper {

struct Check {
  std::string name;
  std::string anchor;  // identifier of the identity being checked
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  std::vector<Check> checks;
  std::vector<std::string> notes;
  nlohmann::json data = nlohmann::json::object();

  Check& add(std::string name, std::string anchor, double residual, double tol);
  // boolean check; residual recorded as 0 (pass) or 1 (fail)
  Check& add_flag(std::string name, std::string anchor, bool ok);
  void merge(const Report& other);
  bool all_pass() const;
  double max_residual() const;
};

nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const Report& r);

}  // namespace qoper
