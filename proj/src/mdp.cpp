#include "csd/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "csd/csv.hpp"
#include "csd/posterior.hpp"

namespace csd {
namespace {

double dot(const double* row, const std::vector<double>& v) {
  double s = 0.0;
  for (size_t i = 0; i < v.size(); ++i) s += row[i] * v[i];
  return s;
}

double q_value(const MdpModel& m, const std::vector<double>& rewards, int s, int a,
               const std::vector<double>& v) {
  const size_t idx = m.action_offset[s] + static_cast<size_t>(a);
  return rewards[idx] + m.discount * dot(m.row(s, a), v);
}

// Greedy preference order for a state's actions.
std::vector<int> action_order(const MdpModel& m, int s) {
  const int mm = m.params.n_attackers;
  std::vector<int> order;
  if (m.states[s].punished) {
    order.push_back(0);
    for (int t = mm; t >= 1; --t) order.push_back(t);
    return order;
  }
  const SensingState st{m.states[s].honest_busy, m.states[s].attacker_busy};
  for (const ActionProfile& a : candidate_profiles(st, m.params)) {
    order.push_back(a.busy_reports * (mm + 1) + a.transmitters);
  }
  return order;
}

}  // namespace

int MdpModel::off_index(int honest_busy, int attacker_busy) const {
  return honest_busy * (params.n_attackers + 1) + attacker_busy;
}

const double* MdpModel::row(int state, int action) const {
  const size_t idx = action_offset[state] + static_cast<size_t>(action);
  return transition.data() + idx * static_cast<size_t>(n_states());
}

ActionProfile MdpModel::decode(int state, int action) const {
  const int mm = params.n_attackers;
  if (states[state].punished) return {0, action};
  return {action / (mm + 1), action % (mm + 1)};
}

bool MdpModel::is_attack(int state, int action) const {
  if (states[state].punished) return false;
  const SensingState st{states[state].honest_busy, states[state].attacker_busy};
  return evaluate_profile(st, decode(state, action), params, false).is_attack;
}

MdpModel build_mdp(const ScenarioParams& params) {
  require_valid(params);
  MdpModel m;
  m.params = params;
  m.discount = params.discount;
  const int mm = params.n_attackers;
  const int honest = params.n_honest();
  const int n = params.n_total;
  m.n_off = (honest + 1) * (mm + 1);
  m.n_on = mm + 1;
  const int ns = m.n_states();

  for (int k = 0; k <= honest; ++k) {
    for (int mb = 0; mb <= mm; ++mb) m.states.push_back({k, mb, false});
  }
  for (int ka = 0; ka <= mm; ++ka) m.states.push_back({-1, ka, true});

  std::vector<double> off_next(ns, 0.0);
  std::vector<double> on_next(ns, 0.0);
  for (int k = 0; k <= honest; ++k) {
    for (int mb = 0; mb <= mm; ++mb) off_next[m.off_index(k, mb)] = sensing_state_pmf(k, mb, params);
  }
  for (int ka = 0; ka <= mm; ++ka) on_next[m.on_index(ka)] = report_count_pmf(mm, ka, params);
  m.start = off_next;

  size_t offset = 0;
  for (int s = 0; s < ns; ++s) {
    m.action_offset.push_back(offset);
    const int count = m.states[s].punished ? mm + 1 : (mm + 1) * (mm + 1);
    m.action_count.push_back(count);
    offset += static_cast<size_t>(count);
  }
  m.attacker_reward.assign(offset, 0.0);
  m.honest_reward.assign(offset, 0.0);
  m.transition.assign(offset * static_cast<size_t>(ns), 0.0);

  for (int s = 0; s < ns; ++s) {
    const MdpState& st = m.states[s];
    for (int a = 0; a < m.action_count[s]; ++a) {
      const size_t idx = m.action_offset[s] + static_cast<size_t>(a);
      double* row = m.transition.data() + idx * static_cast<size_t>(ns);
      if (st.punished) {
        if (a >= 1) {
          const Posterior post = posterior_idle(mm, st.attacker_busy, params);
          m.attacker_reward[idx] = params.total_rate * post.p_idle - mm * post.p_busy * params.collision_penalty;
          m.honest_reward[idx] = -post.p_busy * params.collision_penalty;
        }
        std::copy(on_next.begin(), on_next.end(), row);
        continue;
      }
      const SensingState ss{st.honest_busy, st.attacker_busy};
      const ActionProfile prof = m.decode(s, a);
      const RewardBreakdown r = evaluate_profile(ss, prof, params, false);
      m.attacker_reward[idx] = r.attacker_aggregate;
      m.honest_reward[idx] = r.honest_per_su;
      double trigger = 0.0;
      if (r.announcement == Announcement::H1 && prof.transmitters >= 1) {
        trigger = posterior_idle(n, ss.total(), params).p_busy;
      }
      for (int j = 0; j < ns; ++j) row[j] = (1.0 - trigger) * off_next[j] + trigger * on_next[j];
    }
  }
  return m;
}

ValueIterationResult value_iteration(const MdpModel& m, double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const int ns = m.n_states();
  ValueIterationResult out;
  std::vector<double> v(ns, 0.0);
  std::vector<double> next(ns, 0.0);
  const double d = m.discount;
  const double stop = d > 0.0 ? tolerance * (1.0 - d) / (2.0 * d) : INFINITY;
  for (;;) {
    double residual = 0.0;
    for (int s = 0; s < ns; ++s) {
      double best = -INFINITY;
      for (int a = 0; a < m.action_count[s]; ++a) {
        best = std::max(best, q_value(m, m.attacker_reward, s, a, v));
      }
      next[s] = best;
      residual = std::max(residual, std::fabs(best - v[s]));
    }
    v.swap(next);
    out.residuals.push_back(residual);
    ++out.sweeps;
    if (residual < stop || out.sweeps >= 1000000) break;
  }
  out.values = v;
  out.policy.assign(ns, 0);
  for (int s = 0; s < ns; ++s) {
    const std::vector<int> order = action_order(m, s);
    int best_a = order.front();
    double best = q_value(m, m.attacker_reward, s, best_a, v);
    for (size_t i = 1; i < order.size(); ++i) {
      const double q = q_value(m, m.attacker_reward, s, order[i], v);
      if (q > best + 1e-10 * std::max(std::fabs(best), std::fabs(q))) {
        best = q;
        best_a = order[i];
      }
    }
    out.policy[s] = best_a;
  }
  return out;
}

ValueIterationResult solve_mdp(const MdpModel& m, double relative_tolerance) {
  const double scale = std::max(std::fabs(start_value(m, policy_value(m, honest_policy(m)))),
                                std::fabs(start_value(m, policy_value(m, threshold_attack_policy(m, 0)))));
  return value_iteration(m, relative_tolerance * std::max(scale, 1e-300));
}

std::vector<double> policy_value(const MdpModel& m, const Policy& policy, RewardKind kind) {
  const int ns = m.n_states();
  if (static_cast<int>(policy.size()) != ns) throw std::invalid_argument("policy size mismatch");
  for (int s = 0; s < ns; ++s) {
    if (policy[s] < 0 || policy[s] >= m.action_count[s]) throw std::invalid_argument("invalid action in policy");
  }
  const std::vector<double>& rewards = kind == RewardKind::Attacker ? m.attacker_reward : m.honest_reward;
  std::vector<double> v(ns, 0.0);
  std::vector<double> next(ns, 0.0);
  const double d = m.discount;
  for (int sweep = 0; sweep < 10000000; ++sweep) {
    double residual = 0.0;
    double scale = 0.0;
    for (int s = 0; s < ns; ++s) {
      next[s] = q_value(m, rewards, s, policy[s], v);
      residual = std::max(residual, std::fabs(next[s] - v[s]));
      scale = std::max(scale, std::fabs(next[s]));
    }
    v.swap(next);
    // Remaining error is at most residual * d / (1 - d).
    if (residual * d / (1.0 - d) <= 1e-12 * std::max(scale, 1e-300)) break;
  }
  return v;
}

std::vector<double> policy_value_horizon(const MdpModel& m, const Policy& policy, long long horizon,
                                         RewardKind kind) {
  const int ns = m.n_states();
  if (static_cast<int>(policy.size()) != ns) throw std::invalid_argument("policy size mismatch");
  if (horizon < 0) throw std::invalid_argument("negative horizon");
  const std::vector<double>& rewards = kind == RewardKind::Attacker ? m.attacker_reward : m.honest_reward;
  std::vector<double> v(ns, 0.0);
  std::vector<double> next(ns, 0.0);
  for (long long t = 0; t < horizon; ++t) {
    for (int s = 0; s < ns; ++s) next[s] = q_value(m, rewards, s, policy[s], v);
    if (next == v) break;  // fixed point reached in floating point
    v.swap(next);
  }
  return v;
}

double start_value(const MdpModel& m, const std::vector<double>& values) {
  double s = 0.0;
  for (int i = 0; i < m.n_off; ++i) s += m.start[i] * values[i];
  return s;
}

Policy honest_policy(const MdpModel& m) {
  Policy p(m.n_states(), 0);
  const int mm = m.params.n_attackers;
  for (int s = 0; s < m.n_off; ++s) {
    const SensingState st{m.states[s].honest_busy, m.states[s].attacker_busy};
    const ActionProfile a = honest_equivalent_profile(st, m.params);
    p[s] = a.busy_reports * (mm + 1) + a.transmitters;
  }
  return p;
}

Policy threshold_attack_policy(const MdpModel& m, int z) {
  Policy p = honest_policy(m);
  const int mm = m.params.n_attackers;
  for (int s = 0; s < m.n_off; ++s) {
    const int k = m.states[s].honest_busy + m.states[s].attacker_busy;
    if (k <= z) p[s] = std::max(1, m.states[s].attacker_busy) * (mm + 1) + mm;
  }
  for (int ka = 0; ka <= mm; ++ka) {
    const Posterior post = posterior_idle(mm, ka, m.params);
    const double gain = m.params.total_rate * post.p_idle - mm * post.p_busy * m.params.collision_penalty;
    p[m.on_index(ka)] = gain > 0.0 ? mm : 0;
  }
  return p;
}

ThresholdStructure verify_threshold_structure(const MdpModel& m, const Policy& policy) {
  ThresholdStructure out;
  for (int s = 0; s < m.n_off; ++s) {
    if (m.is_attack(s, policy[s])) {
      out.z = std::max(out.z, m.states[s].honest_busy + m.states[s].attacker_busy);
    }
  }
  for (int s = 0; s < m.n_off; ++s) {
    const int k = m.states[s].honest_busy + m.states[s].attacker_busy;
    if (m.is_attack(s, policy[s]) != (k <= out.z)) {
      out.ok = false;
      out.counterexample = m.states[s];
      break;
    }
  }
  return out;
}

void write_policy_csv(std::ostream& out, const MdpModel& m, const Policy& policy,
                      const std::vector<double>& values) {
  CsvWriter w(out, {"honest_busy", "attacker_busy", "punishment", "b", "M_T", "value"});
  for (int s = 0; s < m.n_states(); ++s) {
    const MdpState& st = m.states[s];
    const ActionProfile a = m.decode(s, policy[s]);
    if (st.punished) {
      w.cell(std::string("NA"));
    } else {
      w.cell(st.honest_busy);
    }
    w.cell(st.attacker_busy).cell(std::string(st.punished ? "on" : "off"));
    if (st.punished) {
      w.cell(std::string("NA"));
    } else {
      w.cell(a.busy_reports);
    }
    w.cell(a.transmitters).cell(values[s]);
    w.end_row();
  }
}

}  // namespace csd
