#pragma once

#include <optional>
#include <string_view>

#include "csd/model.hpp"

namespace csd {

// Long-term discounted aggregate attacker rewards when an H1-collision ends
// collaborative sensing for good.
struct LongTermRewards {
  double lr_honest = 0.0;
  double lr_dishonest = 0.0;
  CooperationCase cooperation_case = CooperationCase::Weak;
  TransmissionCase transmission_case = TransmissionCase::NonAggressive;
  std::optional<int> z_star;  // Aggressive only
  bool attack_prevented = false;
};

// Per-slot aggregate attacker reward after sensing has stopped: attackers
// transmit on their own decisions exactly when that pays.
double post_punishment_value(const ScenarioParams& params);

double lr_honest(const ScenarioParams& params);

// Value of attacking whenever the total busy count is at most z and behaving
// honestly otherwise, 0 <= z <= N.
double lr_dishonest_at(const ScenarioParams& params, int z);

LongTermRewards lr_dishonest(const ScenarioParams& params);

enum class DeltaStatus {
  Interior,         // threshold strictly inside (0,1)
  NoDeltaPrevents,  // honest behavior never wins; value clamped to 1
};

std::string_view to_string(DeltaStatus s);

struct DeltaThreshold {
  double value = 1.0;
  double complement = 0.0;  // 1 - value, computed without cancellation
  DeltaStatus status = DeltaStatus::NoDeltaPrevents;
  CooperationCase formula_case = CooperationCase::Weak;
  int n_attackers = 0;
};

// Discount factor above which honest behavior is optimal, using the formula
// for the given cooperation case regardless of which case params are in.
DeltaThreshold delta_threshold_formula(const ScenarioParams& params, CooperationCase formula_case);

// Requires the non-aggressive case (throws std::domain_error otherwise).
DeltaThreshold delta_threshold(const ScenarioParams& params);

// Largest threshold over M = 1..N-1 among non-aggressive M; nullopt if none.
std::optional<DeltaThreshold> worst_case_delta_threshold(const ScenarioParams& params);

struct DeltaCrossing {
  double value = 0.0;
  double complement = 0.0;
};

// Bisection on 1 - delta for the point where lr_honest and the best
// lr_dishonest meet. nullopt when the sign does not change on (0,1).
std::optional<DeltaCrossing> delta_threshold_oracle(const ScenarioParams& params);

}  // namespace csd
