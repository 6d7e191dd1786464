#include "csd/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#include "csd/csv.hpp"
#include "csd/indirect.hpp"
#include "csd/mdp.hpp"
#include "csd/parallel.hpp"
#include "csd/posterior.hpp"
#include "json.hpp"

namespace csd {

std::string_view to_string(PunishmentMode m) {
  switch (m) {
    case PunishmentMode::None:
      return "none";
    case PunishmentMode::Direct:
      return "direct";
    case PunishmentMode::Indirect:
      return "indirect";
  }
  return "none";
}

std::string_view to_string(AttackerPolicyKind k) {
  switch (k) {
    case AttackerPolicyKind::Optimal:
      return "optimal";
    case AttackerPolicyKind::Honest:
      return "honest";
    case AttackerPolicyKind::Fixed:
      return "fixed";
  }
  return "optimal";
}

std::optional<PunishmentMode> parse_punishment_mode(std::string_view s) {
  for (PunishmentMode m : {PunishmentMode::None, PunishmentMode::Direct, PunishmentMode::Indirect}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::optional<AttackerPolicyKind> parse_attacker_policy(std::string_view s) {
  for (AttackerPolicyKind k : {AttackerPolicyKind::Optimal, AttackerPolicyKind::Honest, AttackerPolicyKind::Fixed}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::vector<Violation> validate(const SimConfig& c) {
  std::vector<Violation> out = c.hetero ? validate(*c.hetero) : validate(c.params);
  if (c.horizon < 1) out.push_back({"horizon", "horizon >= 1"});
  if (c.replications < 1) out.push_back({"replications", "replications >= 1"});
  if (c.workers < 1) out.push_back({"workers", "workers >= 1"});
  if (!(c.pu_rate >= 0.0) || !std::isfinite(c.pu_rate)) out.push_back({"pu_rate", "finite and >= 0"});
  if (!std::isfinite(c.pu_value_slope)) out.push_back({"pu_value_slope", "finite"});
  if (c.trace_slots < 0) out.push_back({"trace_slots", "trace_slots >= 0"});
  if (c.hetero && c.mode == PunishmentMode::Indirect) {
    out.push_back({"mode", "heterogeneous scenarios support the none and direct modes only"});
  }
  if (c.hetero && c.policy == AttackerPolicyKind::Fixed) {
    out.push_back({"policy", "fixed tables are for homogeneous scenarios"});
  }
  if (c.policy == AttackerPolicyKind::Fixed && !c.hetero) {
    const ScenarioParams& p = c.params;
    const size_t want = static_cast<size_t>((p.n_honest() + 1) * (p.n_attackers + 1));
    if (c.fixed_table.size() != want) {
      out.push_back({"fixed_table", "one profile per sensing state, (N-M+1)(M+1) entries"});
    } else {
      for (const ActionProfile& a : c.fixed_table) {
        if (a.busy_reports < 0 || a.busy_reports > p.n_attackers || a.transmitters < 0 ||
            a.transmitters > p.n_attackers) {
          out.push_back({"fixed_table", "profiles need 0 <= b, M_T <= M"});
          break;
        }
      }
    }
  }
  return out;
}

namespace {

constexpr double kZ95 = 1.959963984540054;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class Stream {
 public:
  Stream(std::uint64_t base_seed, std::uint64_t replication)
      : rng_(splitmix64(base_seed ^ splitmix64(replication))) {}
  // Uniform in [0,1) from the top 53 bits.
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 rng_;
};

// Everything a replication needs to act, precomputed once.
struct Plan {
  bool hetero = false;
  std::vector<ActionProfile> off;    // homogeneous: K*(M+1)+Mbar
  std::vector<bool> off_attack;
  std::vector<HeteroAction> hoff;    // heterogeneous: K*2+d
  std::vector<bool> hoff_attack;
  std::vector<int> on;               // transmitters after punishment, per ka
};

Plan make_plan(const SimConfig& c, const MdpModel* model, const Policy* policy) {
  Plan plan;
  const bool direct = c.mode == PunishmentMode::Direct;
  if (c.hetero) {
    plan.hetero = true;
    const int honest = c.hetero->base.n_total - 1;
    for (int k = 0; k <= honest; ++k) {
      for (int d = 0; d <= 1; ++d) {
        const HeteroState st{k, d};
        const HeteroAction a = c.policy == AttackerPolicyKind::Honest
                                   ? honest_equivalent_action(st)
                                   : best_response_hetero(st, *c.hetero, direct).action;
        plan.hoff.push_back(a);
        plan.hoff_attack.push_back(evaluate_hetero(st, a, *c.hetero, direct).is_attack);
      }
    }
    return plan;
  }
  const ScenarioParams& p = c.params;
  const int m = p.n_attackers;
  for (int k = 0; k <= p.n_honest(); ++k) {
    for (int mb = 0; mb <= m; ++mb) {
      const SensingState st{k, mb};
      const int idx = k * (m + 1) + mb;
      ActionProfile a;
      if (c.policy == AttackerPolicyKind::Honest) {
        a = honest_equivalent_profile(st, p);
      } else if (c.policy == AttackerPolicyKind::Fixed) {
        a = c.fixed_table[idx];
      } else if (c.mode == PunishmentMode::Indirect) {
        a = model->decode(idx, (*policy)[idx]);
      } else {
        a = best_response(st, p, direct).profile;
      }
      plan.off.push_back(a);
      plan.off_attack.push_back(evaluate_profile(st, a, p, false).is_attack);
    }
  }
  if (c.mode == PunishmentMode::Indirect) {
    for (int ka = 0; ka <= m; ++ka) plan.on.push_back((*policy)[model->on_index(ka)]);
  }
  return plan;
}

// MDP policy for the configured attacker behavior.
Policy mdp_policy(const SimConfig& c, const MdpModel& model) {
  if (c.policy == AttackerPolicyKind::Optimal) return solve_mdp(model).policy;
  Policy pol = threshold_attack_policy(model, -1);  // honest before, myopic after punishment
  if (c.policy == AttackerPolicyKind::Fixed) {
    const int m = c.params.n_attackers;
    for (int s = 0; s < model.n_off; ++s) {
      pol[s] = c.fixed_table[s].busy_reports * (m + 1) + c.fixed_table[s].transmitters;
    }
  }
  return pol;
}

struct Replication {
  double attacker_sum = 0.0;
  double honest_sum = 0.0;
  double attacker_discounted = 0.0;
  double honest_discounted = 0.0;
  long long busy_slots = 0;
  long long collisions = 0;
  long long busy_h1_collisions = 0;
  long long attack_actions = 0;
  long long trigger_slot = -1;
  std::vector<TraceRow> trace;
};

struct SlotOutcome {
  double attacker = 0.0;
  double honest = 0.0;  // per honest SU
  bool collision = false;
  bool h1_collision = false;
};

Replication run_homogeneous(const SimConfig& c, const Plan& plan, std::uint64_t r, long long trace_slots) {
  const ScenarioParams& p = c.params;
  const int n = p.n_total;
  const int m = p.n_attackers;
  const int honest = p.n_honest();
  const double rate = p.total_rate;
  const bool direct = c.mode == PunishmentMode::Direct;
  const bool indirect = c.mode == PunishmentMode::Indirect;
  Stream rng(c.base_seed, r);
  Replication out;
  bool punished = false;
  double weight = 1.0;
  for (long long t = 0; t < c.horizon; ++t) {
    const bool busy = !rng.bernoulli(p.p_idle);
    const double p_busy_decision = busy ? 1.0 - p.p_missed_detection : p.p_false_alarm;
    TraceRow row;
    row.slot = t;
    row.channel_busy = busy;
    row.punished = punished;
    SlotOutcome o;
    int transmitters = 0;
    if (!punished) {
      int k = 0, mb = 0;
      for (int i = 0; i < honest; ++i) k += rng.bernoulli(p_busy_decision);
      for (int i = 0; i < m; ++i) mb += rng.bernoulli(p_busy_decision);
      const int idx = k * (m + 1) + mb;
      const ActionProfile& a = plan.off[idx];
      if (plan.off_attack[idx]) ++out.attack_actions;
      const Announcement ann = fuse_or(k + a.busy_reports);
      transmitters = ann == Announcement::H0 ? honest + a.transmitters : a.transmitters;
      if (!busy && transmitters > 0) {
        const double share = rate / transmitters;
        o.attacker = a.transmitters * share;
        o.honest = ann == Announcement::H0 ? share : 0.0;
      }
      if (busy && transmitters > 0) {
        o.collision = true;
        o.h1_collision = ann == Announcement::H1;
      }
      double charge = o.collision ? p.collision_penalty : 0.0;
      if (direct && o.h1_collision) charge += p.direct_punishment;
      o.attacker -= m * charge;
      o.honest -= charge;
      row.honest_busy = k;
      row.attacker_busy = mb;
      row.announcement = ann;
      row.penalties = charge;
      if (indirect && o.h1_collision) {
        punished = true;
        out.trigger_slot = t;
      }
    } else {
      int ka = 0;
      for (int i = 0; i < m; ++i) ka += rng.bernoulli(p_busy_decision);
      transmitters = plan.on[ka];
      if (transmitters > 0) {
        if (busy) {
          o.collision = true;
        } else {
          o.attacker = rate;
        }
      }
      const double charge = o.collision ? p.collision_penalty : 0.0;
      o.attacker -= m * charge;
      o.honest -= charge;
      row.honest_busy = -1;
      row.attacker_busy = ka;
      row.penalties = charge;
    }
    out.attacker_sum += o.attacker;
    out.honest_sum += o.honest;
    out.attacker_discounted += weight * o.attacker;
    out.honest_discounted += weight * o.honest;
    weight *= p.discount;
    out.busy_slots += busy;
    out.collisions += o.collision;
    out.busy_h1_collisions += o.h1_collision;
    if (t < trace_slots) {
      row.transmitters = transmitters;
      row.collision = o.collision;
      out.trace.push_back(row);
    }
  }
  (void)n;
  return out;
}

Replication run_heterogeneous(const SimConfig& c, const Plan& plan, std::uint64_t r, long long trace_slots) {
  const HeteroParams& h = *c.hetero;
  const ScenarioParams& p = h.base;
  const int honest = p.n_total - 1;
  const bool direct = c.mode == PunishmentMode::Direct;
  double honest_rate_sum = 0.0;
  for (double x : h.rates_honest) honest_rate_sum += x;
  Stream rng(c.base_seed, r);
  Replication out;
  double weight = 1.0;
  for (long long t = 0; t < c.horizon; ++t) {
    const bool busy = !rng.bernoulli(p.p_idle);
    int k = 0;
    const double honest_busy_p = busy ? 1.0 - p.p_missed_detection : p.p_false_alarm;
    for (int i = 0; i < honest; ++i) k += rng.bernoulli(honest_busy_p);
    const int d = rng.bernoulli(busy ? 1.0 - h.p_missed_detection_attacker : h.p_false_alarm_attacker);
    const int idx = k * 2 + d;
    const HeteroAction& a = plan.hoff[idx];
    if (plan.hoff_attack[idx]) ++out.attack_actions;
    const Announcement ann = fuse_or(k + a.report);
    const int transmitters = ann == Announcement::H0 ? honest + a.transmit : a.transmit;
    SlotOutcome o;
    if (!busy && transmitters > 0) {
      o.attacker = a.transmit * h.rate_attacker / transmitters;
      // Mean over honest SUs of rate_i / T.
      o.honest = ann == Announcement::H0 ? honest_rate_sum / honest / transmitters : 0.0;
    }
    if (busy && transmitters > 0) {
      o.collision = true;
      o.h1_collision = ann == Announcement::H1;
    }
    double charge = o.collision ? p.collision_penalty : 0.0;
    if (direct && o.h1_collision) charge += p.direct_punishment;
    o.attacker -= charge;
    o.honest -= charge;
    out.attacker_sum += o.attacker;
    out.honest_sum += o.honest;
    out.attacker_discounted += weight * o.attacker;
    out.honest_discounted += weight * o.honest;
    weight *= p.discount;
    out.busy_slots += busy;
    out.collisions += o.collision;
    out.busy_h1_collisions += o.h1_collision;
    if (t < trace_slots) {
      TraceRow row;
      row.slot = t;
      row.channel_busy = busy;
      row.honest_busy = k;
      row.attacker_busy = d;
      row.announcement = ann;
      row.transmitters = transmitters;
      row.collision = o.collision;
      row.penalties = charge;
      out.trace.push_back(row);
    }
  }
  return out;
}

Estimate estimate(const std::vector<double>& xs) {
  Estimate e;
  const double n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (double x : xs) sum += x;
  e.mean = sum / n;
  if (xs.size() < 2) {
    e.variance = e.std_error = e.ci95_half_width = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  double ss = 0.0;
  for (double x : xs) ss += (x - e.mean) * (x - e.mean);
  e.variance = ss / (n - 1.0);
  e.std_error = std::sqrt(e.variance / n);
  e.ci95_half_width = kZ95 * e.std_error;
  return e;
}

// Collision probability given a busy channel for stationary (non-absorbing)
// behavior, and the per-slot expected rewards.
struct StationaryReference {
  double attacker = 0.0;
  double honest = 0.0;
  double gamma = 0.0;
};

StationaryReference stationary_reference(const SimConfig& c, const Plan& plan) {
  StationaryReference ref;
  const bool direct = c.mode == PunishmentMode::Direct;
  double busy_collision = 0.0;
  if (plan.hetero) {
    const HeteroParams& h = *c.hetero;
    const int honest = h.base.n_total - 1;
    for (int k = 0; k <= honest; ++k) {
      for (int d = 0; d <= 1; ++d) {
        const HeteroState st{k, d};
        const HeteroAction& a = plan.hoff[k * 2 + d];
        const RewardBreakdown r = evaluate_hetero(st, a, h, direct);
        const double pr = hetero_state_pmf(st, h);
        ref.attacker += pr * r.attacker_aggregate;
        ref.honest += pr * r.honest_per_su;
        const double att = d == 1 ? 1.0 - h.p_missed_detection_attacker : h.p_missed_detection_attacker;
        const bool tx = r.announcement == Announcement::H0 || a.transmit == 1;
        if (tx) busy_collision += joint_busy_count(honest, k, h.base) * att;
      }
    }
    ref.gamma = busy_collision / (1.0 - h.base.p_idle);
    return ref;
  }
  const ScenarioParams& p = c.params;
  const int m = p.n_attackers;
  for (int k = 0; k <= p.n_honest(); ++k) {
    for (int mb = 0; mb <= m; ++mb) {
      const SensingState st{k, mb};
      const ActionProfile& a = plan.off[k * (m + 1) + mb];
      const RewardBreakdown r = evaluate_profile(st, a, p, direct);
      const double pr = sensing_state_pmf(k, mb, p);
      ref.attacker += pr * r.attacker_aggregate;
      ref.honest += pr * r.honest_per_su;
      const bool tx = r.announcement == Announcement::H0 || a.transmitters >= 1;
      if (tx) {
        busy_collision += joint_busy_count(p.n_honest(), k, p) * joint_busy_count(m, mb, p) / (1.0 - p.p_idle);
      }
    }
  }
  ref.gamma = busy_collision / (1.0 - p.p_idle);
  return ref;
}

double truncation(double discount, long long horizon) { return -std::expm1(horizon * std::log(discount)); }

}  // namespace

SimResult run_experiment(const SimConfig& c) {
  const std::vector<Violation> bad = validate(c);
  if (!bad.empty()) throw std::invalid_argument("invalid simulation config: " + bad.front().field);

  std::optional<MdpModel> model;
  Policy policy;
  if (c.mode == PunishmentMode::Indirect) {
    model = build_mdp(c.params);
    policy = mdp_policy(c, *model);
  }
  const Plan plan = make_plan(c, model ? &*model : nullptr, model ? &policy : nullptr);

  std::vector<Replication> reps(static_cast<size_t>(c.replications));
  parallel_for(reps.size(), c.workers, [&](size_t r) {
    const long long trace = r == 0 ? c.trace_slots : 0;
    reps[r] = plan.hetero ? run_heterogeneous(c, plan, r, trace) : run_homogeneous(c, plan, r, trace);
  });

  SimResult result;
  SimStats& s = result.stats;
  std::vector<double> att, hon, att_d, hon_d, triggers;
  for (const Replication& rep : reps) {
    att.push_back(rep.attacker_sum / static_cast<double>(c.horizon));
    hon.push_back(rep.honest_sum / static_cast<double>(c.horizon));
    att_d.push_back(rep.attacker_discounted);
    hon_d.push_back(rep.honest_discounted);
    s.busy_slots += rep.busy_slots;
    s.collision_count += rep.collisions;
    s.busy_h1_collisions += rep.busy_h1_collisions;
    s.attack_actions += rep.attack_actions;
    if (rep.trigger_slot >= 0) {
      ++s.punishment.episodes_triggered;
      triggers.push_back(static_cast<double>(rep.trigger_slot));
      s.punishment.min_slot = std::min(s.punishment.min_slot.value_or(rep.trigger_slot), rep.trigger_slot);
      s.punishment.max_slot = std::max(s.punishment.max_slot.value_or(rep.trigger_slot), rep.trigger_slot);
    }
  }
  if (!triggers.empty()) s.punishment.mean_slot = estimate(triggers).mean;
  s.attacker_per_slot = estimate(att);
  s.honest_per_slot = estimate(hon);
  s.attacker_discounted = estimate(att_d);
  s.honest_discounted = estimate(hon_d);
  s.slots = c.horizon * c.replications;
  s.empirical_gamma = s.busy_slots > 0 ? static_cast<double>(s.collision_count) / s.busy_slots : 0.0;
  const ScenarioParams& base = c.hetero ? c.hetero->base : c.params;
  const double v_pu = c.pu_value_slope * c.pu_rate;
  s.pu_utility = (1.0 - s.empirical_gamma) * v_pu + s.empirical_gamma * base.n_total * base.collision_penalty;
  result.trace = std::move(reps.front().trace);

  AnalyticReference& a = s.analytic;
  const double trunc = truncation(base.discount, c.horizon);
  const double geometric = 1.0 / (1.0 - base.discount);
  if (c.mode != PunishmentMode::Indirect) {
    const StationaryReference ref = stationary_reference(c, plan);
    a.attacker_per_slot = ref.attacker;
    a.honest_per_slot = ref.honest;
    a.attacker_discounted = ref.attacker * trunc * geometric;
    a.honest_discounted = ref.honest * trunc * geometric;
    a.attacker_discounted_infinite = ref.attacker * geometric;
    a.gamma = ref.gamma;
    a.discount_tail_bound = std::fabs(ref.attacker) * (1.0 - trunc) * geometric;
  } else {
    const MdpModel& mdl = *model;
    a.attacker_discounted = start_value(mdl, policy_value_horizon(mdl, policy, c.horizon));
    a.honest_discounted = start_value(mdl, policy_value_horizon(mdl, policy, c.horizon, RewardKind::HonestPerSu));
    if (c.policy == AttackerPolicyKind::Honest) {
      a.attacker_discounted_infinite = lr_honest(c.params);
    } else if (c.policy == AttackerPolicyKind::Optimal) {
      const LongTermRewards lr = lr_dishonest(c.params);
      a.attacker_discounted_infinite = std::max(lr.lr_honest, lr.lr_dishonest);
    } else {
      a.attacker_discounted_infinite = start_value(mdl, policy_value(mdl, policy));
    }
    double rmax = 0.0;
    for (int st = 0; st < mdl.n_states(); ++st) {
      rmax = std::max(rmax, std::fabs(mdl.attacker_reward[mdl.action_offset[st] + policy[st]]));
    }
    a.discount_tail_bound = (1.0 - trunc) * rmax * geometric;
    bool triggers_possible = false;
    for (size_t i = 0; i < plan.off.size(); ++i) {
      const int m = c.params.n_attackers;
      const SensingState st{static_cast<int>(i) / (m + 1), static_cast<int>(i) % (m + 1)};
      if (evaluate_profile(st, plan.off[i], c.params, false).announcement == Announcement::H1 &&
          plan.off[i].transmitters >= 1) {
        triggers_possible = true;
      }
    }
    if (!triggers_possible) {
      const StationaryReference ref = stationary_reference(c, plan);
      a.attacker_per_slot = ref.attacker;
      a.honest_per_slot = ref.honest;
      a.gamma = ref.gamma;
    }
  }
  if (a.gamma) a.pu_utility = (1.0 - *a.gamma) * v_pu + *a.gamma * base.n_total * base.collision_penalty;
  return result;
}

namespace {

nlohmann::json opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json to_json(const Estimate& e) {
  return {{"mean", number(e.mean)},
          {"variance", number(e.variance)},
          {"std_error", number(e.std_error)},
          {"ci95_half_width", number(e.ci95_half_width)}};
}

nlohmann::json to_json(const ScenarioParams& p) {
  return {{"n_total", p.n_total},
          {"n_attackers", p.n_attackers},
          {"p_idle", p.p_idle},
          {"p_false_alarm", p.p_false_alarm},
          {"p_missed_detection", p.p_missed_detection},
          {"collision_penalty", p.collision_penalty},
          {"direct_punishment", p.direct_punishment},
          {"discount", p.discount},
          {"total_rate", p.total_rate}};
}

}  // namespace

std::string stats_json(const SimConfig& c, const SimStats& s) {
  nlohmann::json cfg = {{"mode", std::string(to_string(c.mode))},
                        {"attacker_policy", std::string(to_string(c.policy))},
                        {"horizon", c.horizon},
                        {"replications", c.replications},
                        {"base_seed", c.base_seed},
                        {"pu_rate", c.pu_rate},
                        {"pu_value_slope", c.pu_value_slope}};
  if (c.hetero) {
    cfg["scenario"] = to_json(c.hetero->base);
    cfg["attacker"] = {{"p_false_alarm", c.hetero->p_false_alarm_attacker},
                       {"p_missed_detection", c.hetero->p_missed_detection_attacker},
                       {"rate", c.hetero->rate_attacker},
                       {"rates_honest", c.hetero->rates_honest}};
  } else {
    cfg["scenario"] = to_json(c.params);
  }
  nlohmann::json punishment = {{"episodes_triggered", s.punishment.episodes_triggered},
                               {"mean_trigger_slot", opt(s.punishment.mean_slot)},
                               {"min_trigger_slot", nullptr},
                               {"max_trigger_slot", nullptr}};
  if (s.punishment.min_slot) punishment["min_trigger_slot"] = *s.punishment.min_slot;
  if (s.punishment.max_slot) punishment["max_trigger_slot"] = *s.punishment.max_slot;
  const AnalyticReference& a = s.analytic;
  nlohmann::json doc = {
      {"schema_version", 1},
      {"config", cfg},
      {"attacker_aggregate_reward", {{"per_slot", to_json(s.attacker_per_slot)}, {"discounted", to_json(s.attacker_discounted)}}},
      {"honest_per_su_reward", {{"per_slot", to_json(s.honest_per_slot)}, {"discounted", to_json(s.honest_discounted)}}},
      {"slots", s.slots},
      {"busy_slots", s.busy_slots},
      {"collision_count", s.collision_count},
      {"busy_announcement_collisions", s.busy_h1_collisions},
      {"attack_actions", s.attack_actions},
      {"punishment", punishment},
      {"empirical_gamma", number(s.empirical_gamma)},
      {"pu_utility", number(s.pu_utility)},
      {"analytic",
       {{"attacker_per_slot", opt(a.attacker_per_slot)},
        {"honest_per_slot", opt(a.honest_per_slot)},
        {"attacker_discounted", opt(a.attacker_discounted)},
        {"honest_discounted", opt(a.honest_discounted)},
        {"attacker_discounted_infinite", opt(a.attacker_discounted_infinite)},
        {"gamma", opt(a.gamma)},
        {"pu_utility", opt(a.pu_utility)},
        {"discount_tail_bound", number(a.discount_tail_bound)}}}};
  return doc.dump(2) + "\n";
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  CsvWriter w(out, {"slot", "channel_state", "honest_busy", "attacker_busy", "announcement", "transmitters",
                    "collision", "penalties", "punishment_flag"});
  for (const TraceRow& r : trace) {
    w.cell(r.slot).cell(std::string(r.channel_busy ? "busy" : "idle"));
    if (r.honest_busy < 0) {
      w.cell(std::string("NA"));
    } else {
      w.cell(r.honest_busy);
    }
    w.cell(r.attacker_busy);
    w.cell(r.announcement ? std::string(to_string(*r.announcement)) : std::string("NA"));
    w.cell(r.transmitters).cell(r.collision).cell(r.penalties).cell(r.punished);
    w.end_row();
  }
}

}  // namespace csd
