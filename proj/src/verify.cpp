#include "csd/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "csd/direct.hpp"
#include "csd/fusion.hpp"
#include "csd/indirect.hpp"
#include "csd/instances.hpp"
#include "csd/mdp.hpp"
#include "csd/oneshot.hpp"
#include "csd/posterior.hpp"
#include "csd/sim.hpp"
#include "json.hpp"

namespace csd {
namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Collects failures; the first few are kept as the detail text.
class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checked_;
    if (ok) return;
    ++failed_;
    if (failed_ <= 3) notes_ << (failed_ > 1 ? "; " : "") << what;
  }
  long long checked() const { return checked_; }
  long long failed() const { return failed_; }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream os;
    os << summary << ", " << checked_ << " assertions";
    if (failed_ > 0) os << ", " << failed_ << " failed: " << notes_.str();
    return {failed_ == 0 && checked_ > 0, os.str()};
  }

 private:
  long long checked_ = 0;
  long long failed_ = 0;
  std::ostringstream notes_;
};

std::string describe(const ScenarioParams& p) {
  std::ostringstream os;
  os.precision(6);
  os << "N=" << p.n_total << " M=" << p.n_attackers << " P_I=" << p.p_idle << " P_f=" << p.p_false_alarm
     << " P_m=" << p.p_missed_detection << " C_p=" << p.collision_penalty << " delta=" << p.discount;
  return os.str();
}

double rel(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

// Midpoints of n equal cells in (lo, hi).
std::vector<double> axis(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * (i + 0.5) / n);
  return out;
}

std::vector<ScenarioParams> error_grid(const VerifyOptions& o) {
  std::vector<ScenarioParams> out;
  for (double pi : axis(0.0, 1.0, o.grid_points_per_axis)) {
    for (double pf : axis(0.01, 0.1, o.grid_points_per_axis)) {
      for (double pm : axis(0.01, 0.1, o.grid_points_per_axis)) {
        ScenarioParams p;
        p.n_total = 2;
        p.n_attackers = 1;
        p.p_idle = pi;
        p.p_false_alarm = pf;
        p.p_missed_detection = pm;
        p.discount = 0.9;
        out.push_back(p);
      }
    }
  }
  return out;
}

ScenarioParams make(int n, int m, double pi, double pf, double pm, double cp) {
  ScenarioParams p;
  p.n_total = n;
  p.n_attackers = m;
  p.p_idle = pi;
  p.p_false_alarm = pf;
  p.p_missed_detection = pm;
  p.collision_penalty = cp;
  p.discount = 0.9;
  return p;
}

Outcome posterior_monotonicity(const VerifyOptions& o) {
  Tally t;
  for (const ScenarioParams& base : error_grid(o)) {
    for (int n = 1; n <= o.max_group_size; ++n) {
      Posterior prev = posterior_idle(n, 0, base);
      for (int k = 1; k <= n; ++k) {
        const Posterior cur = posterior_idle(n, k, base);
        // Both sides are tracked: near certainty one of them saturates in double.
        const bool ok = cur.log_likelihood_ratio < prev.log_likelihood_ratio && cur.p_idle <= prev.p_idle &&
                        cur.p_busy >= prev.p_busy && (cur.p_idle < prev.p_idle || cur.p_busy > prev.p_busy);
        t.expect(ok, "n=" + std::to_string(n) + " k=" + std::to_string(k) + " " + describe(base));
        prev = cur;
      }
    }
  }
  return t.outcome(std::to_string(error_grid(o).size()) + " grid points, N <= " + std::to_string(o.max_group_size));
}

Outcome condition_i_equivalence(const VerifyOptions& o) {
  Tally t;
  for (const ScenarioParams& base : error_grid(o)) {
    for (int n = 2; n <= o.max_group_size; ++n) {
      ScenarioParams p = base;
      p.n_total = n;
      const CpRegion r = condition_i_bounds(p);
      for (double bound : {r.lower_bound, r.upper_bound}) {
        for (double f : {0.99, 1.01}) {
          p.collision_penalty = bound * f;
          const Posterior all_idle = posterior_idle(n, 0, p);
          const Posterior one_busy = posterior_idle(n, 1, p);
          const bool or0 = all_idle.p_idle / n - all_idle.p_busy * p.collision_penalty > 0.0;
          const bool or1 = one_busy.p_idle / n - one_busy.p_busy * p.collision_penalty < 0.0;
          const bool inside = r.lower_bound < p.collision_penalty && p.collision_penalty < r.upper_bound;
          t.expect(inside == (or0 && or1), describe(p));
          t.expect(condition_i_bounds(p).region == (inside ? Region::II : (p.collision_penalty <= r.lower_bound
                                                                                ? Region::I
                                                                                : Region::III)),
                   "region label " + describe(p));
        }
      }
    }
  }
  return t.outcome("bounds x {0.99, 1.01}");
}

Outcome no_punishment_classes(const VerifyOptions& o) {
  Tally t;
  std::mt19937_64 rng(o.seed + 3);
  InstanceRanges ranges;
  for (int i = 0; i < o.best_response_instances; ++i) {
    const ScenarioParams p = draw_region_ii(rng, ranges);
    const int m = p.n_attackers;
    for (int k = 0; k <= p.n_honest(); ++k) {
      for (int mb = 0; mb <= m; ++mb) {
        const Posterior post = posterior_idle(p.n_total, k + mb, p);
        const double attack = post.p_idle - m * post.p_busy * p.collision_penalty;
        const double honest_su = -post.p_busy * p.collision_penalty;
        const BestResponse br = best_response({k, mb}, p, false);
        const std::string where = "state (" + std::to_string(k) + "," + std::to_string(mb) + ") " + describe(p);
        if (k + mb == 0 || attack > 0.0) {
          // Busy report with every attacker transmitting.
          t.expect(br.reward.announcement == Announcement::H1 && br.profile.transmitters == m,
                   "attack class " + where);
          t.expect(br.reward.is_attack, "attack flag " + where);
          t.expect(rel(br.reward.attacker_aggregate, attack) <= 1e-12, "attacker reward " + where);
          t.expect(rel(br.reward.honest_per_su, honest_su) <= 1e-12, "honest reward " + where);
        } else {
          t.expect(!br.reward.is_attack && br.profile.transmitters == 0, "honest class " + where);
          t.expect(br.reward.attacker_aggregate == 0.0 && br.reward.honest_per_su == 0.0, "zero reward " + where);
        }
      }
    }
  }
  return t.outcome(std::to_string(o.best_response_instances) + " Region-II instances");
}

Outcome direct_oracle(const VerifyOptions& o) {
  Tally t;
  std::mt19937_64 rng(o.seed + 4);
  InstanceRanges ranges;
  ranges.n_min = 3;
  ranges.n_max = 15;
  for (int i = 0; i < o.direct_instances; ++i) {
    const ScenarioParams p = draw_region_ii(rng, ranges);
    const int m = p.n_attackers;
    const double closed = direct_threshold(m, p).value * o.perturb_direct_threshold;
    const auto oracle = direct_threshold_oracle(m, p);
    t.expect(oracle.has_value(), "oracle found no threshold " + describe(p));
    if (!oracle) continue;
    t.expect(rel(closed, *oracle) <= 1e-9, "closed form vs oracle " + describe(p));
    t.expect(count_attacking_states(with_direct_punishment(p, 1.01 * closed)) == 0, "attacks at 1.01x " + describe(p));
    t.expect(count_attacking_states(with_direct_punishment(p, 0.99 * closed)) >= 1, "none at 0.99x " + describe(p));
  }
  return t.outcome(std::to_string(o.direct_instances) + " Region-II instances");
}

Outcome direct_trends(const VerifyOptions&) {
  Tally t;
  for (int n = 3; n <= 14; ++n) {
    double prev = INFINITY;
    for (int m = 1; m < n; ++m) {
      const double v = direct_threshold(m, make(n, m, 0.6, 0.08, 0.08, 6e10)).value;
      t.expect(v < prev, "decreasing in M at N=" + std::to_string(n) + " M=" + std::to_string(m));
      prev = v;
    }
  }
  for (int m = 1; m <= 12; ++m) {
    double prev = 0.0;
    for (int n = m + 1; n <= 14; ++n) {
      const double v = direct_threshold(m, make(n, m, 0.6, 0.08, 0.08, 6e10)).value;
      t.expect(v > prev, "increasing in N-M at M=" + std::to_string(m) + " N=" + std::to_string(n));
      prev = v;
    }
  }
  for (int m = 1; m <= 10; ++m) {
    double prev = 0.0;
    for (int i = 1; i <= 9; ++i) {
      const double v = direct_threshold(m, make(11, m, 0.1 * i, 0.08, 0.08, 6e10)).value;
      t.expect(v > prev, "increasing in P_I at M=" + std::to_string(m));
      prev = v;
    }
    prev = INFINITY;
    for (double cp : {0.0, 1e3, 1e6, 1e9, 1e10, 6e10, 1e11, 1e12}) {
      const double v = direct_threshold(m, make(11, m, 0.6, 0.08, 0.08, cp)).value;
      t.expect(v <= prev, "non-increasing in C_p at M=" + std::to_string(m));
      prev = v;
    }
  }
  return t.outcome("reference grids");
}

Outcome mdp_equivalence(const VerifyOptions& o) {
  Tally t;
  std::mt19937_64 rng(o.seed + 6);
  InstanceRanges ranges;
  int counts[2][2] = {{0, 0}, {0, 0}};  // [aggressive][strong]
  for (int i = 0; i < o.mdp_instances; ++i) {
    const ScenarioParams p = draw_region_ii(rng, ranges);
    const MdpModel model = build_mdp(p);
    const LongTermRewards lr = lr_dishonest(p);
    const bool aggressive = lr.transmission_case == TransmissionCase::Aggressive;
    ++counts[aggressive][lr.cooperation_case == CooperationCase::Strong];
    const std::string where = describe(p);
    auto value_of = [&](const Policy& pol) { return start_value(model, policy_value(model, pol)); };
    t.expect(rel(value_of(honest_policy(model)), lr.lr_honest) <= 1e-8, "honest value " + where);
    const int z = lr.z_star.value_or(0);
    t.expect(rel(value_of(threshold_attack_policy(model, z)), lr.lr_dishonest) <= 1e-8, "attack value " + where);
    const ValueIterationResult vi = solve_mdp(model);
    const double best = std::max(lr.lr_honest, lr.lr_dishonest);
    t.expect(rel(start_value(model, vi.values), best) <= 1e-8, "optimum " + where);
    t.expect(rel(value_of(vi.policy), best) <= 1e-8, "greedy policy value " + where);
    const ThresholdStructure ts = verify_threshold_structure(model, vi.policy);
    t.expect(ts.ok, "threshold structure " + where);
    const int expected_z = lr.attack_prevented ? -1 : z;
    t.expect(ts.z == expected_z, "attack threshold " + where);
  }
  std::ostringstream os;
  os << o.mdp_instances << " instances (NT/WC " << counts[0][0] << ", NT/SC " << counts[0][1] << ", AT/WC "
     << counts[1][0] << ", AT/SC " << counts[1][1] << ")";
  return t.outcome(os.str());
}

Outcome delta_thresholds(const VerifyOptions& o) {
  Tally t;
  std::mt19937_64 rng(o.seed + 7);
  InstanceRanges ranges;
  ranges.n_min = 2;
  ranges.n_max = 5;
  ranges.error_min = 0.05;
  ranges.error_max = 0.35;
  int done = 0, attempts = 0;
  while (done < o.delta_instances && attempts < 100 * std::max(1, o.delta_instances)) {
    ++attempts;
    const ScenarioParams p = draw_region_ii(rng, ranges);
    if (classify_transmission_case(p) != TransmissionCase::NonAggressive) continue;
    const DeltaThreshold d = delta_threshold(p);
    if (d.status != DeltaStatus::Interior) continue;
    ++done;
    const auto oracle = delta_threshold_oracle(p);
    t.expect(oracle.has_value(), "no crossing " + describe(p));
    if (oracle) t.expect(std::fabs(oracle->value - d.value) <= 1e-9, "formula vs oracle " + describe(p));
  }
  t.expect(done == o.delta_instances, "not enough interior instances");

  // Weak cooperation on Region-II grids.
  for (int n = 7; n <= 11; ++n) {
    double prev = INFINITY;
    for (int m = 1; m < n; ++m) {
      ScenarioParams p = make(n, m, 0.6, 0.08, 0.08, 0.0);
      const CpRegion r = condition_i_bounds(p);
      p.collision_penalty = std::sqrt(r.lower_bound * r.upper_bound);
      const DeltaThreshold d = delta_threshold_formula(p, CooperationCase::Weak);
      t.expect(d.status == DeltaStatus::Interior, "weak interior " + describe(p));
      // A decreasing threshold is an increasing complement.
      if (m > 1) t.expect(d.complement > prev, "weak decreasing in M " + describe(p));
      prev = d.complement;
    }
  }
  for (int m : {1, 3, 5}) {
    const ScenarioParams base = make(8, m, 0.6, 0.08, 0.08, 0.0);
    const CpRegion r = condition_i_bounds(base);
    double prev = INFINITY;
    for (int i = 0; i < 10; ++i) {
      const double cp = r.lower_bound * std::pow(r.upper_bound / r.lower_bound, i / 10.0);
      const DeltaThreshold d = delta_threshold_formula(with_collision_penalty(base, cp), CooperationCase::Weak);
      t.expect(d.status == DeltaStatus::Interior && d.complement < prev, "weak increasing in C_p M=" +
                                                                             std::to_string(m));
      prev = d.complement;
    }
  }
  // Strong cooperation on the large-penalty grid.
  for (int n = 7; n <= 11; ++n) {
    double prev = -1.0;
    for (int m = 1; m < n; ++m) {
      const DeltaThreshold d = delta_threshold_formula(make(n, m, 0.6, 0.08, 0.08, 3e18), CooperationCase::Strong);
      t.expect(d.status == DeltaStatus::Interior && d.value >= prev,
               "strong increasing in M at N=" + std::to_string(n) + " M=" + std::to_string(m));
      prev = d.value;
    }
  }
  for (int m : {1, 3, 6}) {
    double prev = 0.0;
    for (double cp : {1e17, 3e17, 1e18, 3e18, 1e19}) {
      const double c = delta_threshold_formula(make(11, m, 0.6, 0.08, 0.08, cp), CooperationCase::Strong).complement;
      t.expect(c > prev, "strong decreasing in C_p M=" + std::to_string(m));
      prev = c;
    }
  }
  double prev = 1.0;
  for (int m = 1; m <= 10; ++m) {
    const double c = delta_threshold_formula(make(11, m, 0.6, 0.08, 0.08, 3e18), CooperationCase::Strong).complement;
    t.expect(c < prev, "strong approaches 1 as M grows, M=" + std::to_string(m));
    prev = c;
  }
  t.expect(prev < 0.01, "strong threshold at M=N-1 within 0.01 of 1");
  return t.outcome(std::to_string(done) + " interior instances plus shape grids");
}

HeteroParams hetero(double pf, double pm, double pfa, double pma, double ra, double cp) {
  HeteroParams h;
  h.base = make(11, 1, 0.6, pf, pm, cp);
  h.p_false_alarm_attacker = pfa;
  h.p_missed_detection_attacker = pma;
  h.rate_attacker = ra;
  h.rates_honest.assign(10, 1.0);
  return h;
}

Outcome hetero_threshold(const VerifyOptions&) {
  Tally t;
  const std::vector<double> errs{0.001, 0.01, 0.04, 0.07, 0.1};
  for (double pf : errs) {
    for (double pm : errs) {
      for (double pfa : errs) {
        for (double pma : errs) {
          for (double cp : {1.0, 1e4, 1e8, 6e10, 1e12}) {
            const HeteroParams h = hetero(pf, pm, pfa, pma, 1.0, cp);
            const HeteroThreshold th = direct_threshold_hetero(h);
            t.expect(th.value == std::max({th.th1, th.th2, th.th3}) && th.binding == 1 && th.value == th.th1,
                     "th1 binding");
            HeteroParams twice = h;
            twice.rate_attacker = 2.5;
            t.expect(rel(direct_threshold_hetero(twice).th1, 2.5 * th.th1) <= 1e-14, "linear in r_A");
          }
        }
      }
    }
  }
  for (double pma : errs) {
    double prev = INFINITY;
    for (double pfa : errs) {
      const double v = direct_threshold_hetero(hetero(0.05, 0.05, pfa, pma, 1.0, 6e10)).value;
      t.expect(v < prev, "decreasing in P_fA");
      prev = v;
    }
  }
  for (double pfa : errs) {
    double prev = INFINITY;
    for (double pma : errs) {
      const double v = direct_threshold_hetero(hetero(0.05, 0.05, pfa, pma, 1.0, 6e10)).value;
      t.expect(v < prev, "decreasing in P_mA");
      prev = v;
    }
  }
  for (double e : errs) {
    const HeteroParams h = hetero(e, e, e, e, 1.0, 6e10);
    for (int k = 0; k <= 10; ++k) {
      for (int d = 0; d <= 1; ++d) {
        const Posterior a = posterior_idle_hetero(k, d, h);
        const Posterior b = posterior_idle(11, k + d, h.base);
        t.expect(rel(a.p_idle, b.p_idle) <= 1e-12 && rel(a.p_busy, b.p_busy) <= 1e-12, "collapse to homogeneous");
      }
    }
  }
  return t.outcome("error rates in (0, 0.1]");
}

// Lower bound on the per-slot collision probability of any Region-II policy:
// every sensor misses a busy channel.
double all_miss(const ScenarioParams& p) {
  return (1.0 - p.p_idle) * std::pow(p.p_missed_detection, p.n_total);
}

Outcome sim_agreement(const VerifyOptions& o) {
  std::ostringstream summary;
  bool passed = true;
  InstanceRanges ranges;
  ranges.n_min = 2;
  ranges.n_max = 6;
  ranges.error_min = 0.05;
  ranges.error_max = 0.3;
  ranges.discount_min = 0.75;
  ranges.discount_max = 0.85;
  for (PunishmentMode mode : {PunishmentMode::None, PunishmentMode::Direct, PunishmentMode::Indirect}) {
    std::mt19937_64 rng(o.seed + 9 + static_cast<int>(mode));
    const bool indirect = mode == PunishmentMode::Indirect;
    // Enough expected collisions that the sample mean is close to normal.
    const double effective = indirect ? o.sim_episodes * 5.0 : static_cast<double>(o.sim_slots);
    int inside = 0, total = 0;
    std::string first_miss;
    while (total < o.sim_instances) {
      ScenarioParams p = draw_region_ii(rng, ranges);
      if (all_miss(p) * effective < 200.0) continue;
      if (mode == PunishmentMode::Direct) {
        p.direct_punishment = log_uniform(rng, 0.1, 2.0) * direct_threshold(p.n_attackers, p).value;
      }
      SimConfig c;
      c.params = p;
      c.mode = mode;
      c.policy = AttackerPolicyKind::Optimal;
      c.workers = o.workers;
      c.base_seed = o.seed + 1000 * static_cast<std::uint64_t>(total) + static_cast<std::uint64_t>(mode);
      if (indirect) {
        c.replications = o.sim_episodes;
        c.horizon = static_cast<long long>(std::ceil(std::log(1e-13) / std::log(p.discount)));
      } else {
        c.replications = o.sim_replications;
        c.horizon = std::max<long long>(1, o.sim_slots / o.sim_replications);
      }
      const SimStats s = run_experiment(c).stats;
      bool ok;
      if (indirect) {
        const double closed = *s.analytic.attacker_discounted_infinite;
        ok = std::fabs(s.attacker_discounted.mean - closed) <=
                 3 * s.attacker_discounted.std_error + s.analytic.discount_tail_bound &&
             std::fabs(s.honest_discounted.mean - *s.analytic.honest_discounted) <= 3 * s.honest_discounted.std_error;
      } else {
        ok = std::fabs(s.attacker_per_slot.mean - *s.analytic.attacker_per_slot) <= 3 * s.attacker_per_slot.std_error &&
             std::fabs(s.honest_per_slot.mean - *s.analytic.honest_per_slot) <= 3 * s.honest_per_slot.std_error;
      }
      inside += ok;
      if (!ok && first_miss.empty()) first_miss = describe(p);
      ++total;
    }
    const bool mode_ok = inside >= std::ceil(o.sim_pass_fraction * total);
    passed = passed && mode_ok;
    summary << (summary.tellp() > 0 ? "; " : "") << to_string(mode) << " " << inside << "/" << total
            << " within 3 SE";
    if (!mode_ok) summary << " (first miss " << first_miss << ")";
  }
  return {passed, summary.str()};
}

Outcome sim_determinism(const VerifyOptions& o) {
  Tally t;
  ScenarioParams p = make(4, 2, 0.6, 0.2, 0.2, 0.0);
  const CpRegion r = condition_i_bounds(p);
  p.collision_penalty = std::sqrt(r.lower_bound * r.upper_bound);
  p.discount = 0.8;
  for (PunishmentMode mode : {PunishmentMode::None, PunishmentMode::Direct, PunishmentMode::Indirect}) {
    SimConfig c;
    c.params = p;
    c.params.direct_punishment = 0.5 * direct_threshold(2, p).value;
    c.mode = mode;
    c.horizon = 2000;
    c.replications = 64;
    c.base_seed = o.seed;
    c.workers = 1;
    const std::string one = stats_json(c, run_experiment(c).stats);
    c.workers = 8;
    const std::string eight = stats_json(c, run_experiment(c).stats);
    t.expect(one == eight, std::string("mode ") + std::string(to_string(mode)));
  }
  return t.outcome("1 vs 8 workers");
}

struct CheckDef {
  std::string name;
  double limit;
  std::function<Outcome(const VerifyOptions&)> run;
};

const std::vector<CheckDef>& checks() {
  static const std::vector<CheckDef> defs{
      {"posterior_monotonicity", 1.0, posterior_monotonicity},
      {"condition_i_equivalence", 1.0, condition_i_equivalence},
      {"no_punishment_best_response", 5.0, no_punishment_classes},
      {"direct_threshold_oracle", 30.0, direct_oracle},
      {"direct_threshold_trends", 1.0, direct_trends},
      {"long_term_rewards_vs_mdp", 120.0, mdp_equivalence},
      {"discount_thresholds", 30.0, delta_thresholds},
      {"heterogeneous_threshold", 5.0, hetero_threshold},
      {"simulation_agreement", 300.0, sim_agreement},
      {"simulation_determinism", 30.0, sim_determinism},
  };
  return defs;
}

}  // namespace

std::vector<Violation> validate(const VerifyOptions& o) {
  std::vector<Violation> out;
  auto positive = [&](long long v, const char* name) {
    if (v < 1) out.push_back({name, std::string(name) + " >= 1"});
  };
  positive(o.grid_points_per_axis, "grid_points_per_axis");
  positive(o.best_response_instances, "best_response_instances");
  positive(o.direct_instances, "direct_instances");
  positive(o.mdp_instances, "mdp_instances");
  positive(o.delta_instances, "delta_instances");
  positive(o.sim_instances, "sim_instances");
  positive(o.sim_slots, "sim_slots");
  positive(o.sim_replications, "sim_replications");
  positive(o.sim_episodes, "sim_episodes");
  positive(o.workers, "workers");
  if (o.max_group_size < 2) out.push_back({"max_group_size", "max_group_size >= 2"});
  if (o.sim_replications < 2 || o.sim_episodes < 2) {
    out.push_back({"sim_replications", "at least two replications for a standard error"});
  }
  if (!(o.sim_pass_fraction > 0.0 && o.sim_pass_fraction <= 1.0)) {
    out.push_back({"sim_pass_fraction", "0 < sim_pass_fraction <= 1"});
  }
  if (!(o.perturb_direct_threshold > 0.0) || !std::isfinite(o.perturb_direct_threshold)) {
    out.push_back({"perturb_direct_threshold", "finite and > 0"});
  }
  return out;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const CheckDef& d : checks()) out.push_back(d.name);
    return out;
  }();
  return names;
}

std::vector<CheckResult> run_checks(const VerifyOptions& options, const std::vector<std::string>& only) {
  const std::vector<Violation> bad = validate(options);
  if (!bad.empty()) throw std::invalid_argument("invalid verify options: " + bad.front().field);
  for (const std::string& name : only) {
    if (std::find(check_names().begin(), check_names().end(), name) == check_names().end()) {
      throw std::invalid_argument("unknown check: " + name);
    }
  }
  std::vector<CheckResult> out;
  int id = 0;
  for (const CheckDef& d : checks()) {
    ++id;
    if (!only.empty() && std::find(only.begin(), only.end(), d.name) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = d.run(options);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    CheckResult r;
    r.id = id;
    r.name = d.name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.time_limit = d.limit;
    r.passed = o.passed;
    r.detail = o.detail;
    if (options.enforce_time_limits && r.seconds > r.time_limit) {
      r.passed = false;
      r.detail += "; exceeded time limit";
    }
    out.push_back(r);
  }
  return out;
}

std::string results_json(const std::vector<CheckResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const CheckResult& r : results) {
    all = all && r.passed;
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"passed", r.passed},
                   {"detail", r.detail},
                   {"seconds", r.seconds},
                   {"time_limit_seconds", r.time_limit}});
  }
  nlohmann::json doc = {{"schema_version", 1}, {"passed", all}, {"checks", arr}};
  return doc.dump(2) + "\n";
}

}  // namespace csd
