#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csd/fusion.hpp"
#include "csd/model.hpp"
#include "csd/oneshot.hpp"

namespace csd {

enum class PunishmentMode { None, Direct, Indirect };
enum class AttackerPolicyKind { Optimal, Honest, Fixed };

std::string_view to_string(PunishmentMode m);
std::string_view to_string(AttackerPolicyKind k);
std::optional<PunishmentMode> parse_punishment_mode(std::string_view s);
std::optional<AttackerPolicyKind> parse_attacker_policy(std::string_view s);

struct SimConfig {
  ScenarioParams params;
  // Single attacker with its own sensor and rates; none/direct modes only.
  std::optional<HeteroParams> hetero;
  PunishmentMode mode = PunishmentMode::None;
  AttackerPolicyKind policy = AttackerPolicyKind::Optimal;
  // Pre-punishment profile per sensing state, index K*(M+1)+Mbar. After
  // punishment a fixed-table attacker group transmits exactly when its own
  // decisions make it pay.
  std::vector<ActionProfile> fixed_table;
  long long horizon = 1000;  // slots per replication (episode)
  int replications = 100;
  std::uint64_t base_seed = 1;
  int workers = 1;
  double pu_rate = 1.0;         // r_PU
  double pu_value_slope = 1.0;  // V(r) = slope * r
  long long trace_slots = 0;    // per-slot trace of replication 0
};

std::vector<Violation> validate(const SimConfig& config);

struct Estimate {
  double mean = 0.0;
  double variance = 0.0;  // across replications, NaN with one replication
  double std_error = 0.0;
  double ci95_half_width = 0.0;
};

struct TriggerStats {
  long long episodes_triggered = 0;
  std::optional<double> mean_slot;
  std::optional<long long> min_slot;
  std::optional<long long> max_slot;
};

// Exact expectations of the simulated quantities where available.
struct AnalyticReference {
  std::optional<double> attacker_per_slot;
  std::optional<double> honest_per_slot;
  std::optional<double> attacker_discounted;  // truncated at the horizon
  std::optional<double> honest_discounted;
  std::optional<double> attacker_discounted_infinite;  // closed form, no truncation
  std::optional<double> gamma;
  std::optional<double> pu_utility;
  double discount_tail_bound = 0.0;  // |infinite - truncated| bound
};

struct SimStats {
  Estimate attacker_per_slot;
  Estimate attacker_discounted;
  Estimate honest_per_slot;
  Estimate honest_discounted;
  long long slots = 0;
  long long busy_slots = 0;
  long long collision_count = 0;
  long long busy_h1_collisions = 0;
  long long attack_actions = 0;
  TriggerStats punishment;
  double empirical_gamma = 0.0;
  double pu_utility = 0.0;
  AnalyticReference analytic;
};

struct TraceRow {
  long long slot = 0;
  bool channel_busy = false;
  int honest_busy = 0;
  int attacker_busy = 0;
  std::optional<Announcement> announcement;  // none once sensing has stopped
  int transmitters = 0;
  bool collision = false;
  double penalties = 0.0;  // charged to each SU
  bool punished = false;
};

struct SimResult {
  SimStats stats;
  std::vector<TraceRow> trace;
};

// Replication r draws from its own generator seeded from (base_seed, r), and
// results are merged in replication order, so the output does not depend on
// the worker count. Throws std::invalid_argument on an invalid config.
SimResult run_experiment(const SimConfig& config);

// Stats document with a schema_version field; the worker count is omitted.
std::string stats_json(const SimConfig& config, const SimStats& stats);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

}  // namespace csd
