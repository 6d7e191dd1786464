#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "csd/model.hpp"

namespace csd {

enum class BindingConstraint {
  None,               // threshold is 0, no punishment needed
  FalseIdleDeviation,  // all-idle state: report busy and transmit alone
  TransmitAfterBusy,   // a busy decision exists: transmit anyway
};

std::string_view to_string(BindingConstraint b);

struct DirectThreshold {
  double value = 0.0;
  double log_value = 0.0;  // -inf when value is 0
  BindingConstraint binding = BindingConstraint::None;
  // Homogeneous: {transmit-after-busy, false-idle}. Heterogeneous: {th1, th2, th3}.
  std::vector<double> per_constraint_values;
};

// Smallest C_b above which no state has a profitable attack, for M attackers
// among params.n_total SUs. params.n_attackers is ignored. Caller's rate units.
DirectThreshold direct_threshold(int n_attackers, const ScenarioParams& params);

// Bisection over C_b on the exhaustive best response. nullopt when no finite
// C_b removes every attack (deviations under an idle announcement or silent
// busy reports cannot be punished).
std::optional<double> direct_threshold_oracle(int n_attackers, const ScenarioParams& params);

// Number of states whose best response is an attack at the given C_b.
int count_attacking_states(const ScenarioParams& params);

// Threshold a defender must use without knowing M: the M = 1 value.
DirectThreshold worst_case_threshold(const ScenarioParams& params);

// Single attacker with its own error rates and rate r_A. value is the max of
// the three per-state thresholds; binding is the index (1, 2 or 3) of the largest.
struct HeteroThreshold {
  double value = 0.0;
  double th1 = 0.0;  // all-idle state, report busy and transmit
  double th2 = 0.0;  // only the attacker decides busy, transmit anyway
  double th3 = 0.0;  // one honest busy decision, transmit anyway
  int binding = 1;
};

HeteroThreshold direct_threshold_hetero(const HeteroParams& hparams);

}  // namespace csd
