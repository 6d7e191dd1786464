#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csd/model.hpp"

namespace csd {

// Sizes of the randomized and gridded checks. Defaults are the full suite.
struct VerifyOptions {
  int grid_points_per_axis = 10;     // prior, false alarm and missed detection axes
  int max_group_size = 20;
  int best_response_instances = 100;
  int direct_instances = 200;
  int mdp_instances = 100;
  int delta_instances = 200;
  int sim_instances = 100;
  long long sim_slots = 1000000;     // per no-punishment or direct instance
  int sim_replications = 100;        // the slots are split across these
  int sim_episodes = 10000;          // per indirect instance
  double sim_pass_fraction = 0.95;
  std::uint64_t seed = 20240601;
  int workers = 1;
  bool enforce_time_limits = true;
  // Test hook: scales the closed-form direct threshold before it is compared
  // with the oracle, to confirm the check can fail.
  double perturb_direct_threshold = 1.0;
};

std::vector<Violation> validate(const VerifyOptions& options);

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;
};

// Names in run order; ids are 1-based positions.
const std::vector<std::string>& check_names();

// Runs the listed checks (all when empty). Throws std::invalid_argument for
// invalid options or an unknown name.
std::vector<CheckResult> run_checks(const VerifyOptions& options, const std::vector<std::string>& only = {});

std::string results_json(const std::vector<CheckResult>& results);

}  // namespace csd
