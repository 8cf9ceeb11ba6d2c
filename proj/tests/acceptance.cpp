// Runs every acceptance criterion and prints one pass/fail line per criterion.
#include <cstdio>
#include <cstring>
#include <string>

#include "phc/repro.hpp"

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::strcmp(argv[1], "-v") == 0;
  const auto results = phc::run_acceptance();
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%s criterion %s: %s (%.2f s)\n", r.passed ? "PASS" : "FAIL", r.id.c_str(), r.title.c_str(),
                r.seconds);
    for (const auto& d : r.details)
      if (verbose || d.rfind("FAIL", 0) == 0) std::printf("    %s\n", d.c_str());
    failed += !r.passed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed ? 1 : 0;
}
