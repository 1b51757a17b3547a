#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// The acceptance suite: thirteen self-contained criteria covering the boost
// family, the energy forms, the hypergeometric engine, the mode-operator
// spectrum, projections, linear and nonlinear evolution, modulation fitting,
// and the transform round trips. Each criterion owns its tolerances and its
// runtime budget; run_acceptance executes them in order and optionally
// streams one PASS/FAIL line per criterion.

namespace sswave {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// Runs the selected criteria (all thirteen when `only` is empty). When `log`
// is non-null, one line per criterion is written as it finishes.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {},
                                            std::ostream* log = nullptr);

bool all_passed(const std::vector<CriterionResult>& results);

// The formatted line for one result, as printed by run_acceptance.
std::string format_result(const CriterionResult& r);

}  // namespace sswave
