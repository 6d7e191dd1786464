#pragma once

#include <string_view>

#include "csd/model.hpp"

namespace csd {

enum class Announcement { H0, H1 };  // idle / busy

std::string_view to_string(Announcement a);

// n-out-of-N rule: busy when at least `threshold` reports are busy.
Announcement fuse(int busy_report_count, int group_size, int threshold);

inline Announcement fuse_or(int busy_report_count) {
  return busy_report_count >= 1 ? Announcement::H1 : Announcement::H0;
}

enum class Region { I, II, III };

std::string_view to_string(Region r);

// C_p interval on which the OR rule gives every SU positive reward after an
// all-idle decision and negative reward after a single busy decision.
struct CpRegion {
  double log_lower_bound = 0.0;
  double log_upper_bound = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  Region region = Region::II;  // of params.collision_penalty
  bool boundary = false;       // C_p equals one of the bounds
};

// ln{[P_I/(1-P_I)] [(1-P_f)/P_m]^n}, the all-idle log likelihood ratio.
double log_prefactor(int group_size, const ScenarioParams& params);
// ln{P_f P_m / [(1-P_f)(1-P_m)]}, the change in log ratio per extra busy decision.
double log_busy_step(const ScenarioParams& params);

// Bounds are in the caller's rate units.
CpRegion condition_i_bounds(const ScenarioParams& params);

// True when membership in the open interval agrees with the two per-SU
// reward signs evaluated from the posteriors.
bool check_condition_i_semantics(const ScenarioParams& params);

}  // namespace csd
