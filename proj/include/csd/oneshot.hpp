#pragma once

#include <iosfwd>
#include <vector>

#include "csd/fusion.hpp"
#include "csd/model.hpp"

namespace csd {

struct SensingState {
  int honest_busy = 0;    // K
  int attacker_busy = 0;  // Mbar
  int total() const { return honest_busy + attacker_busy; }
};

// Aggregate attacker action: how many report busy, how many transmit.
struct ActionProfile {
  int busy_reports = 0;
  int transmitters = 0;
  bool operator==(const ActionProfile&) const = default;
};

struct RewardBreakdown {
  double attacker_aggregate = 0.0;
  double honest_per_su = 0.0;
  Announcement announcement = Announcement::H0;
  bool is_attack = false;
};

struct BestResponse {
  ActionProfile profile;
  RewardBreakdown reward;
};

// Truthful reports, then transmit exactly when the announcement is idle.
ActionProfile honest_equivalent_profile(const SensingState& state, const ScenarioParams& params);

// Expected single-slot rewards given the true local decisions. Rewards use
// total_rate for the idle-channel share; penalties are absolute.
RewardBreakdown evaluate_profile(const SensingState& state, const ActionProfile& profile,
                                 const ScenarioParams& params, bool include_direct_punishment);

// Maximizer over all (b, M_T) in {0..M}^2. Ties keep the honest-equivalent
// profile, then the smaller b, then the larger M_T.
BestResponse best_response(const SensingState& state, const ScenarioParams& params,
                           bool include_direct_punishment);

// The order in which best_response breaks ties; index 0 is the honest-equivalent profile.
std::vector<ActionProfile> candidate_profiles(const SensingState& state, const ScenarioParams& params);

struct BehaviorRow {
  SensingState state;
  ActionProfile profile;
  RewardBreakdown reward;
  double probability = 0.0;  // Pr(state)
};

// One row per state, K-major.
std::vector<BehaviorRow> behavior_table(const ScenarioParams& params, bool include_direct_punishment);

// Sum over states of Pr(state) times the best-response rewards.
struct ExpectedRewards {
  double attacker_aggregate = 0.0;
  double honest_per_su = 0.0;
  double attack_probability = 0.0;
};
ExpectedRewards expected_rewards(const std::vector<BehaviorRow>& table);

void write_behavior_csv(std::ostream& out, const std::vector<BehaviorRow>& table);

// Single attacker with heterogeneous detection and rates. The state is the
// honest busy count plus the attacker's own decision; the action is its
// report bit and whether it transmits.
struct HeteroState {
  int honest_busy = 0;
  int attacker_busy = 0;  // 0 or 1
};

struct HeteroAction {
  int report = 0;
  int transmit = 0;
  bool operator==(const HeteroAction&) const = default;
};

struct HeteroBestResponse {
  HeteroAction action;
  RewardBreakdown reward;  // honest_per_su averages the honest SUs' rates
};

HeteroAction honest_equivalent_action(const HeteroState& state);
RewardBreakdown evaluate_hetero(const HeteroState& state, const HeteroAction& action,
                                const HeteroParams& hparams, bool include_direct_punishment);
// Ties keep the honest-equivalent action, then report 0 before 1, then transmit before wait.
HeteroBestResponse best_response_hetero(const HeteroState& state, const HeteroParams& hparams,
                                        bool include_direct_punishment);
double hetero_state_pmf(const HeteroState& state, const HeteroParams& hparams);

}  // namespace csd
