#pragma once

// The acceptance suite. Each criterion returns a list of checks with the
// measured value and the bound it was held to.

#include <string>
#include <vector>

#include <json.hpp>

namespace orbconv::verify {

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  std::string relation;  // "<=", ">=", "==" or "info" (not gating)
  bool passed = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool quick = false;
  bool passed = false;
  double seconds = 0.0;
  std::vector<Check> checks;
  std::string note;
  std::string error_kind;  // set when the library raised an error
};

int criterion_count();
std::string criterion_name(int id);

// Errors from the library are caught and reported as a failed check.
CriterionResult run_criterion(int id, bool quick);

nlohmann::json to_json(const CriterionResult& result);

}  // namespace orbconv::verify
