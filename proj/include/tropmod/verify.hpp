#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tropmod/fibre.hpp"

namespace tropmod {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyReport {
  std::vector<CriterionResult> criteria;
  bool all_pass = false;
  uint64_t seed = 0;
  int max_n = 6;
  std::string to_json(int indent = -1) const;
};

// Runs the full verification suite (criteria 1-8); progress lines are
// written per criterion when `progress` is given. `only` restricts to one
// criterion id (0 = all).
VerifyReport run_verification(int max_n = 6, uint64_t seed = 424242, int only = 0,
                              std::function<void(const CriterionResult&)> progress = {});

// Seed from the TROPMOD_SEED environment variable, or the default.
uint64_t seed_from_env(uint64_t fallback = 424242);

}  // namespace tropmod
