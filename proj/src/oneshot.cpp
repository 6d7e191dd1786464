#include "csd/oneshot.hpp"

#include <stdexcept>

#include "csd/csv.hpp"
#include "csd/posterior.hpp"

namespace csd {
namespace {

void check_state(const SensingState& s, const ScenarioParams& p) {
  if (s.honest_busy < 0 || s.honest_busy > p.n_honest() || s.attacker_busy < 0 ||
      s.attacker_busy > p.n_attackers) {
    throw std::invalid_argument("sensing state outside its range");
  }
}

void check_profile(const ActionProfile& a, const ScenarioParams& p) {
  if (a.busy_reports < 0 || a.busy_reports > p.n_attackers || a.transmitters < 0 ||
      a.transmitters > p.n_attackers) {
    throw std::invalid_argument("action profile outside its range");
  }
}

Announcement announce(const SensingState& s, const ActionProfile& a) {
  return fuse_or(s.honest_busy + a.busy_reports);
}

RewardBreakdown rewards_given(const Posterior& post, const SensingState& s, const ActionProfile& a,
                              const ScenarioParams& p, bool direct) {
  RewardBreakdown out;
  out.announcement = announce(s, a);
  const double m = p.n_attackers;
  const double r = p.total_rate;
  if (out.announcement == Announcement::H0) {
    const double sharers = p.n_honest() + a.transmitters;
    out.attacker_aggregate = a.transmitters * post.p_idle * r / sharers - m * post.p_busy * p.collision_penalty;
    out.honest_per_su = post.p_idle * r / sharers - post.p_busy * p.collision_penalty;
  } else if (a.transmitters >= 1) {
    const double charge = p.collision_penalty + (direct ? p.direct_punishment : 0.0);
    out.attacker_aggregate = post.p_idle * r - m * post.p_busy * charge;
    out.honest_per_su = -post.p_busy * charge;
  }
  const ActionProfile honest = honest_equivalent_profile(s, p);
  out.is_attack = out.announcement != announce(s, honest) || a.transmitters != honest.transmitters;
  return out;
}

}  // namespace

ActionProfile honest_equivalent_profile(const SensingState& state, const ScenarioParams& params) {
  check_state(state, params);
  ActionProfile a;
  a.busy_reports = state.attacker_busy;
  a.transmitters = state.total() == 0 ? params.n_attackers : 0;
  return a;
}

RewardBreakdown evaluate_profile(const SensingState& state, const ActionProfile& profile,
                                 const ScenarioParams& params, bool include_direct_punishment) {
  check_state(state, params);
  check_profile(profile, params);
  const Posterior post = posterior_idle(params.n_total, state.total(), params);
  return rewards_given(post, state, profile, params, include_direct_punishment);
}

std::vector<ActionProfile> candidate_profiles(const SensingState& state, const ScenarioParams& params) {
  const ActionProfile honest = honest_equivalent_profile(state, params);
  std::vector<ActionProfile> out{honest};
  const int m = params.n_attackers;
  for (int b = 0; b <= m; ++b) {
    for (int t = m; t >= 0; --t) {
      ActionProfile a{b, t};
      if (!(a == honest)) out.push_back(a);
    }
  }
  return out;
}

BestResponse best_response(const SensingState& state, const ScenarioParams& params,
                           bool include_direct_punishment) {
  check_state(state, params);
  const Posterior post = posterior_idle(params.n_total, state.total(), params);
  BestResponse best;
  bool first = true;
  for (const ActionProfile& a : candidate_profiles(state, params)) {
    RewardBreakdown r = rewards_given(post, state, a, params, include_direct_punishment);
    if (first || r.attacker_aggregate > best.reward.attacker_aggregate) {
      best.profile = a;
      best.reward = r;
      first = false;
    }
  }
  return best;
}

std::vector<BehaviorRow> behavior_table(const ScenarioParams& params, bool include_direct_punishment) {
  require_valid(params);
  std::vector<BehaviorRow> rows;
  rows.reserve(static_cast<size_t>((params.n_honest() + 1) * (params.n_attackers + 1)));
  for (int k = 0; k <= params.n_honest(); ++k) {
    for (int mb = 0; mb <= params.n_attackers; ++mb) {
      SensingState s{k, mb};
      BestResponse br = best_response(s, params, include_direct_punishment);
      rows.push_back({s, br.profile, br.reward, sensing_state_pmf(k, mb, params)});
    }
  }
  return rows;
}

ExpectedRewards expected_rewards(const std::vector<BehaviorRow>& table) {
  ExpectedRewards out;
  for (const auto& row : table) {
    out.attacker_aggregate += row.probability * row.reward.attacker_aggregate;
    out.honest_per_su += row.probability * row.reward.honest_per_su;
    if (row.reward.is_attack) out.attack_probability += row.probability;
  }
  return out;
}

void write_behavior_csv(std::ostream& out, const std::vector<BehaviorRow>& table) {
  CsvWriter w(out, {"honest_busy", "attacker_busy", "b", "M_T", "announcement", "attacker_reward",
                    "honest_reward", "is_attack"});
  for (const auto& row : table) {
    w.cell(row.state.honest_busy)
        .cell(row.state.attacker_busy)
        .cell(row.profile.busy_reports)
        .cell(row.profile.transmitters)
        .cell(std::string(to_string(row.reward.announcement)))
        .cell(row.reward.attacker_aggregate)
        .cell(row.reward.honest_per_su)
        .cell(row.reward.is_attack);
    w.end_row();
  }
}

HeteroAction honest_equivalent_action(const HeteroState& state) {
  HeteroAction a;
  a.report = state.attacker_busy;
  a.transmit = state.honest_busy + state.attacker_busy == 0 ? 1 : 0;
  return a;
}

RewardBreakdown evaluate_hetero(const HeteroState& state, const HeteroAction& action,
                                const HeteroParams& h, bool include_direct_punishment) {
  const ScenarioParams& p = h.base;
  if (state.honest_busy < 0 || state.honest_busy > p.n_total - 1 || state.attacker_busy < 0 ||
      state.attacker_busy > 1 || action.report < 0 || action.report > 1 || action.transmit < 0 ||
      action.transmit > 1) {
    throw std::invalid_argument("heterogeneous state or action outside its range");
  }
  const Posterior post = posterior_idle_hetero(state.honest_busy, state.attacker_busy, h);
  double mean_honest_rate = 0.0;
  for (double r : h.rates_honest) mean_honest_rate += r;
  mean_honest_rate /= static_cast<double>(h.rates_honest.size());

  RewardBreakdown out;
  out.announcement = fuse_or(state.honest_busy + action.report);
  if (out.announcement == Announcement::H0) {
    const double sharers = (p.n_total - 1) + action.transmit;
    out.attacker_aggregate =
        action.transmit * post.p_idle * h.rate_attacker / sharers - post.p_busy * p.collision_penalty;
    out.honest_per_su = post.p_idle * mean_honest_rate / sharers - post.p_busy * p.collision_penalty;
  } else if (action.transmit == 1) {
    const double charge = p.collision_penalty + (include_direct_punishment ? p.direct_punishment : 0.0);
    out.attacker_aggregate = post.p_idle * h.rate_attacker - post.p_busy * charge;
    out.honest_per_su = -post.p_busy * charge;
  }
  const HeteroAction honest = honest_equivalent_action(state);
  const Announcement honest_ann = fuse_or(state.honest_busy + honest.report);
  out.is_attack = out.announcement != honest_ann || action.transmit != honest.transmit;
  return out;
}

HeteroBestResponse best_response_hetero(const HeteroState& state, const HeteroParams& h,
                                        bool include_direct_punishment) {
  const HeteroAction honest = honest_equivalent_action(state);
  HeteroBestResponse best{honest, evaluate_hetero(state, honest, h, include_direct_punishment)};
  for (int report = 0; report <= 1; ++report) {
    for (int transmit = 1; transmit >= 0; --transmit) {
      const HeteroAction a{report, transmit};
      if (a == honest) continue;
      RewardBreakdown r = evaluate_hetero(state, a, h, include_direct_punishment);
      if (r.attacker_aggregate > best.reward.attacker_aggregate) best = {a, r};
    }
  }
  return best;
}

double hetero_state_pmf(const HeteroState& state, const HeteroParams& h) {
  const ScenarioParams& p = h.base;
  const int honest = p.n_total - 1;
  const double pfa = h.p_false_alarm_attacker;
  const double pma = h.p_missed_detection_attacker;
  const double idle_att = state.attacker_busy == 1 ? pfa : 1.0 - pfa;
  const double busy_att = state.attacker_busy == 1 ? 1.0 - pma : pma;
  return joint_idle_count(honest, state.honest_busy, p) * idle_att +
         joint_busy_count(honest, state.honest_busy, p) * busy_att;
}

}  // namespace csd
