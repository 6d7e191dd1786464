// Runs the acceptance checks and prints one PASS/FAIL line per criterion.
// Optional arguments restrict the run to the named checks.
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "csd/parallel.hpp"
#include "csd/verify.hpp"

int main(int argc, char** argv) {
  csd::VerifyOptions options;
  options.workers = csd::default_workers();
  const std::vector<std::string> only(argv + 1, argv + argc);
  std::vector<csd::CheckResult> results;
  try {
    results = csd::run_checks(options, only);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "csd_acceptance: %s\n", e.what());
    return 2;
  }
  bool all = true;
  for (const csd::CheckResult& r : results) {
    all = all && r.passed;
    std::printf("[%s] %d %s (%.2fs of %.0fs): %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.time_limit, r.detail.c_str());
  }
  std::fflush(stdout);
  return all ? 0 : 1;
}
