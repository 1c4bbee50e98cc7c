#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace ecms {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // worst-case numerics or the failure description
  double seconds = 0;
};

using Suite = std::vector<CheckResult>;

/// full = acceptance scale; quick = reduced desk scale for CLI smoke runs.
Suite verify_jack(bool full);
Suite verify_cauchy(bool full);
Suite verify_norms(bool full);
Suite verify_wp(bool full);
Suite verify_symmetry(bool full);
Suite verify_perturbation(bool full);
Suite verify_rank(bool full);

Suite run_suite(const std::string& name, bool full);
bool suite_passed(const Suite& s);
nlohmann::ordered_json suite_to_json(const Suite& s);

}  // namespace ecms
