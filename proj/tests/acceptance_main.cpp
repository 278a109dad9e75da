#include <cstdlib>
#include <iostream>
#include <string>

#include "entropylab/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20240611;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  for (int id = 1; id <= entropylab::kCriteriaCount; ++id) {
    const auto r = entropylab::run_criterion(id, seed);
    if (!r.passed) ++failed;
    std::cout << entropylab::format_result(r) << std::endl;
  }
  std::cout << (entropylab::kCriteriaCount - failed) << "/" << entropylab::kCriteriaCount << " criteria passed"
            << std::endl;
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
