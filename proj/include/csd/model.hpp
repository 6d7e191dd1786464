#pragma once

// Scenario parameters for collaborative sensing under cooperative
// data-falsification attacks, plus the regime classifiers shared by the
// analysis modules.

#include <string>
#include <string_view>
#include <vector>

namespace csd {

struct ScenarioParams {
  int n_total = 0;      // N, all SUs including attackers
  int n_attackers = 0;  // M
  double p_idle = 0.0;
  double p_false_alarm = 0.0;
  double p_missed_detection = 0.0;
  double collision_penalty = 0.0;  // C_p, charged to every SU per collision
  double direct_punishment = 0.0;  // C_b
  double discount = 0.0;
  double total_rate = 1.0;

  int n_honest() const { return n_total - n_attackers; }
};

// Single-attacker scenario with heterogeneous detection and rates.
// The attacker is SU number N; honest SUs keep the base P_f / P_m.
struct HeteroParams {
  ScenarioParams base;
  double p_false_alarm_attacker = 0.0;
  double p_missed_detection_attacker = 0.0;
  double rate_attacker = 1.0;
  std::vector<double> rates_honest;  // N - 1 entries
};

struct Violation {
  std::string field;
  std::string message;
};

// Every violated invariant, in field order. Empty means valid.
std::vector<Violation> validate(const ScenarioParams& params);
std::vector<Violation> validate(const HeteroParams& params);

inline bool is_valid(const ScenarioParams& params) { return validate(params).empty(); }
inline bool is_valid(const HeteroParams& params) { return validate(params).empty(); }

// Throws std::invalid_argument listing all violations.
void require_valid(const ScenarioParams& params);
void require_valid(const HeteroParams& params);

// Penalties rescaled so the channel rate is 1. Every reward-valued quantity
// computed at unit rate scales back by total_rate.
ScenarioParams unit_rate(const ScenarioParams& params);

ScenarioParams with_attackers(ScenarioParams params, int n_attackers);
ScenarioParams with_collision_penalty(ScenarioParams params, double collision_penalty);
ScenarioParams with_direct_punishment(ScenarioParams params, double direct_punishment);
ScenarioParams with_discount(ScenarioParams params, double discount);

enum class TransmissionCase { NonAggressive, Aggressive };  // Case.NT / Case.AT
enum class CooperationCase { Weak, Strong };                // Case.WC / Case.SC

std::string_view to_string(TransmissionCase c);
std::string_view to_string(CooperationCase c);

// A single SU acting on its own sensing result expects a negative reward.
bool check_a4(const ScenarioParams& params);
// Right-hand side of the A4 inequality, in the caller's rate units.
double a4_bound(const ScenarioParams& params);

TransmissionCase classify_transmission_case(const ScenarioParams& params);
CooperationCase classify_cooperation_case(const ScenarioParams& params);

}  // namespace csd
