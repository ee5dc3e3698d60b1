#pragma once

// The acceptance suite: one entry per criterion, each with its own check and
// timing.  Shared by the acceptance binary and `legendre report-all`.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

namespace leg {

struct AcceptanceConfig {
  int n_max = 30;  // criteria needing larger n are left out of the matrix
  int roth_max_deg = 200;
  int wang_trials = 50;
  std::uint64_t seed = 2024;
  double height_tol = 1e-6;
  std::set<int> only;  // empty: all

  static AcceptanceConfig from_json(const nlohmann::json& j);  // throws invalid_argument
  nlohmann::json to_json() const;
};

struct CriterionResult {
  int id = 0;
  std::string key;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  nlohmann::json data;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg);

}  // namespace leg
