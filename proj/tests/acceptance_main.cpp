#include <iostream>
#include <string>

#include "magspec/acceptance.hpp"

// Runs every acceptance criterion and prints one line per row. Optional
// argv[1] selects a suite (all | closedform | properties | C01..C11),
// argv[2] a seed offset for the randomized rows. Exit code is the number
// of failed criteria.
int main(int argc, char** argv) {
  const std::string suite = argc > 1 ? argv[1] : "all";
  const unsigned seed = argc > 2 ? unsigned(std::stoul(argv[2])) : 0u;
  try {
    auto rows = magspec::run_acceptance(suite, seed);
    return magspec::report_acceptance(rows, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "acceptance run aborted: " << e.what() << "\n";
    return 64;
  }
}
