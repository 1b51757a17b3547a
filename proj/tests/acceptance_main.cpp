// Acceptance gate: runs the thirteen criteria and prints one line each.
// Exit status 0 means every criterion passed within its budget.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "sswave/verify.hpp"

int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  const auto results = sswave::run_acceptance(only, &std::cout);
  int passed = 0;
  for (const auto& r : results) passed += r.pass ? 1 : 0;
  std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
  return sswave::all_passed(results) ? 0 : 1;
}
