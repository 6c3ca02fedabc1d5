#pragma once

#include <string>
#include <vector>

namespace sharpconvex::acceptance {

inline constexpr int kCriterionCount = 11;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

// Runs criterion `id` in [1, kCriterionCount]. Exceptions raised by the
// numerics are caught and reported as a failure.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_all();

// "PASS  3  second moment ...  (0.01 s)"
std::string format_line(const CriterionResult& r);

}  // namespace sharpconvex::acceptance
