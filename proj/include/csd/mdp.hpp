#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "csd/model.hpp"
#include "csd/oneshot.hpp"

namespace csd {

// Before punishment the state is (K, Mbar); after it only the attackers'
// busy count ka is known and honest SUs no longer transmit.
struct MdpState {
  int honest_busy = 0;  // -1 once punished
  int attacker_busy = 0;
  bool punished = false;
};

// Dense finite MDP for the game with collaboration termination.
// Off states come first, index K*(M+1)+Mbar; on states follow, index offset+ka.
// Off-state action index b*(M+1)+M_T; on-state action index M_T'.
struct MdpModel {
  ScenarioParams params;
  double discount = 0.0;
  int n_off = 0;
  int n_on = 0;
  std::vector<MdpState> states;
  std::vector<size_t> action_offset;     // per state, into the per-action arrays
  std::vector<int> action_count;         // per state
  std::vector<double> attacker_reward;   // per (state, action)
  std::vector<double> honest_reward;     // per (state, action), one honest SU
  std::vector<double> transition;        // per (state, action), a row of n_states
  std::vector<double> start;             // sensing distribution over off states

  int n_states() const { return n_off + n_on; }
  int off_index(int honest_busy, int attacker_busy) const;
  int on_index(int attacker_busy) const { return n_off + attacker_busy; }
  const double* row(int state, int action) const;
  ActionProfile decode(int state, int action) const;  // on states: busy_reports = 0
  bool is_attack(int state, int action) const;
};

MdpModel build_mdp(const ScenarioParams& params);

using Policy = std::vector<int>;  // action index per state

struct ValueIterationResult {
  std::vector<double> values;
  Policy policy;
  std::vector<double> residuals;  // sup-norm change per sweep
  int sweeps = 0;
};

// Stops once the Bellman residual is below tolerance*(1-delta)/(2*delta).
// Greedy ties (within 1e-10 relative) keep the honest-equivalent action, then
// smaller b, then larger M_T; after punishment waiting, then M_T' = M.
ValueIterationResult value_iteration(const MdpModel& model, double tolerance);

// Value iteration with the tolerance set relative to the honest and
// attack-at-zero start values. A tolerance from the largest per-slot reward
// would be far too loose: rare states carry huge collision penalties.
ValueIterationResult solve_mdp(const MdpModel& model, double relative_tolerance = 1e-12);

enum class RewardKind { Attacker, HonestPerSu };

std::vector<double> policy_value(const MdpModel& model, const Policy& policy,
                                 RewardKind kind = RewardKind::Attacker);

// Expected discounted sum over the first `horizon` slots.
std::vector<double> policy_value_horizon(const MdpModel& model, const Policy& policy, long long horizon,
                                         RewardKind kind = RewardKind::Attacker);

// Expected value at the start of a slot, before sensing.
double start_value(const MdpModel& model, const std::vector<double>& values);

Policy honest_policy(const MdpModel& model);
// Attack (busy report, all transmit) when K+Mbar <= z, honest otherwise; after
// punishment transmit exactly when the attackers' own decisions make it pay.
Policy threshold_attack_policy(const MdpModel& model, int z);

struct ThresholdStructure {
  bool ok = true;
  int z = -1;  // largest attacked total busy count, -1 for none
  std::optional<MdpState> counterexample;
};

ThresholdStructure verify_threshold_structure(const MdpModel& model, const Policy& policy);

void write_policy_csv(std::ostream& out, const MdpModel& model, const Policy& policy,
                      const std::vector<double>& values);

}  // namespace csd
