// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance [ARTIFACT_DIR] [CRITERION...]

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "harness.hpp"

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "";
  std::vector<int> only;
  for (int i = 2; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  const int failures = tarry::harness::run_acceptance(std::cout, dir, only);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
