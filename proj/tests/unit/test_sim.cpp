#include <random>
#include <sstream>

#include "csd/direct.hpp"
#include "csd/indirect.hpp"
#include "csd/sim.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace csd;
using testing_support::params;

namespace {

SimConfig config(const ScenarioParams& p, PunishmentMode mode, AttackerPolicyKind policy, long long horizon,
                 int reps, std::uint64_t seed = 7) {
  SimConfig c;
  c.params = p;
  c.mode = mode;
  c.policy = policy;
  c.horizon = horizon;
  c.replications = reps;
  c.base_seed = seed;
  return c;
}

// |empirical - reference| in standard errors.
double z_score(const Estimate& e, double reference) { return std::fabs(e.mean - reference) / e.std_error; }

// Noisy small groups so that collisions are frequent enough to estimate.
const ScenarioParams kNoisy = params(4, 2, 0.6, 0.2, 0.2, 5.0, 0.0, 0.8);

}  // namespace

TEST_CASE("mode and policy names round trip") {
  for (PunishmentMode m : {PunishmentMode::None, PunishmentMode::Direct, PunishmentMode::Indirect}) {
    CHECK(parse_punishment_mode(to_string(m)) == m);
  }
  for (AttackerPolicyKind k : {AttackerPolicyKind::Optimal, AttackerPolicyKind::Honest, AttackerPolicyKind::Fixed}) {
    CHECK(parse_attacker_policy(to_string(k)) == k);
  }
  CHECK_FALSE(parse_punishment_mode("sometimes").has_value());
}

TEST_CASE("config validation") {
  SimConfig c = config(kNoisy, PunishmentMode::None, AttackerPolicyKind::Optimal, 0, 0);
  c.workers = 0;
  const auto v = validate(c);
  CHECK(v.size() == 3);
  CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
  SimConfig f = config(kNoisy, PunishmentMode::None, AttackerPolicyKind::Fixed, 10, 2);
  CHECK_FALSE(validate(f).empty());
  f.fixed_table.assign(9, ActionProfile{0, 0});
  CHECK(validate(f).empty());
  f.fixed_table[3] = ActionProfile{3, 0};
  CHECK_FALSE(validate(f).empty());
}

TEST_CASE("identical seeds give identical stats for any worker count") {
  SimConfig c = config(kNoisy, PunishmentMode::Indirect, AttackerPolicyKind::Optimal, 50, 64, 99);
  c.workers = 1;
  const std::string one = stats_json(c, run_experiment(c).stats);
  c.workers = 8;
  const std::string eight = stats_json(c, run_experiment(c).stats);
  CHECK(one == eight);
  CHECK(one.find("\"schema_version\": 1") != std::string::npos);
  c.base_seed = 100;
  CHECK(stats_json(c, run_experiment(c).stats) != one);
}

TEST_CASE("nearly perfect sensors on an idle channel share the rate") {
  const ScenarioParams p = params(5, 2, 0.999999, 1e-12, 1e-12, 10.0);
  SimConfig c = config(p, PunishmentMode::None, AttackerPolicyKind::Honest, 200, 1);
  c.trace_slots = 200;
  const SimResult r = run_experiment(c);
  REQUIRE(r.trace.size() == 200);
  for (const TraceRow& row : r.trace) {
    if (row.channel_busy) continue;
    CHECK(row.transmitters == 5);
    CHECK_FALSE(row.collision);
    CHECK(row.announcement == Announcement::H0);
  }
  CHECK(r.stats.honest_per_slot.mean == doctest::Approx(0.2).epsilon(1e-3));
}

TEST_CASE("honest attackers never trigger punishment") {
  for (PunishmentMode m : {PunishmentMode::None, PunishmentMode::Direct, PunishmentMode::Indirect}) {
    SimConfig c = config(kNoisy, m, AttackerPolicyKind::Honest, 500, 20);
    c.params.direct_punishment = 100.0;
    const SimStats s = run_experiment(c).stats;
    CHECK(s.busy_h1_collisions == 0);
    CHECK(s.attack_actions == 0);
    CHECK(s.punishment.episodes_triggered == 0);
    CHECK(s.collision_count > 0);
  }
}

TEST_CASE("busy announcement collisions are charged the direct punishment") {
  SimConfig c = config(kNoisy, PunishmentMode::Direct, AttackerPolicyKind::Fixed, 2000, 1);
  c.params.direct_punishment = 1000.0;
  // Always report busy and transmit.
  c.fixed_table.assign(9, ActionProfile{1, 2});
  c.trace_slots = 2000;
  const SimResult r = run_experiment(c);
  int h1 = 0, h0 = 0;
  for (const TraceRow& row : r.trace) {
    if (!row.collision) {
      CHECK(row.penalties == 0.0);
      continue;
    }
    CHECK(row.channel_busy);
    if (row.announcement == Announcement::H1) {
      CHECK(row.penalties == 1005.0);
      ++h1;
    } else {
      CHECK(row.penalties == 5.0);
      ++h0;
    }
  }
  CHECK(h1 > 0);
  CHECK(h0 == 0);
}

TEST_CASE("missed detection under an idle announcement costs only the collision penalty") {
  SimConfig c = config(kNoisy, PunishmentMode::Direct, AttackerPolicyKind::Honest, 5000, 1);
  c.params.direct_punishment = 1000.0;
  c.trace_slots = 5000;
  int seen = 0;
  for (const TraceRow& row : run_experiment(c).trace) {
    if (row.collision) {
      CHECK(row.announcement == Announcement::H0);
      CHECK(row.penalties == 5.0);
      ++seen;
    }
  }
  CHECK(seen > 0);
}

TEST_CASE("no-punishment rewards agree with the state-weighted expectation") {
  int inside = 0;
  const int total = 10;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> err(0.1, 0.3);
  for (int i = 0; i < total; ++i) {
    ScenarioParams p = params(4, 1 + i % 3, 0.6, err(rng), err(rng), 0.0, 0.0, 0.8);
    p.collision_penalty = 2.0 + i;
    const SimStats s = run_experiment(config(p, PunishmentMode::None, AttackerPolicyKind::Optimal, 2000, 50, i)).stats;
    const bool ok = z_score(s.attacker_per_slot, *s.analytic.attacker_per_slot) < 3 &&
                    z_score(s.honest_per_slot, *s.analytic.honest_per_slot) < 3 &&
                    z_score(s.attacker_discounted, *s.analytic.attacker_discounted) < 3;
    inside += ok;
    CHECK(s.empirical_gamma >= 0.0);
    CHECK(s.empirical_gamma <= 1.0);
  }
  CHECK(inside >= 9);
}

TEST_CASE("indirect punishment absorbs and matches the long-term closed form") {
  // Non-aggressive: only the all-idle state is attacked.
  ScenarioParams p = params(3, 1, 0.6, 0.25, 0.25, 0.0, 0.0, 0.5);
  p.collision_penalty = 6.0;
  REQUIRE(classify_transmission_case(p) == TransmissionCase::NonAggressive);
  const LongTermRewards lr = lr_dishonest(p);
  REQUIRE_FALSE(lr.attack_prevented);
  SimConfig c = config(p, PunishmentMode::Indirect, AttackerPolicyKind::Optimal, 60, 20000, 3);
  c.trace_slots = 60;
  const SimResult r = run_experiment(c);
  const SimStats& s = r.stats;
  CHECK(*s.analytic.attacker_discounted_infinite == doctest::Approx(lr.lr_dishonest).epsilon(1e-9));
  CHECK(s.analytic.discount_tail_bound < 0.1 * s.attacker_discounted.std_error);
  CHECK(z_score(s.attacker_discounted, lr.lr_dishonest) < 4);
  CHECK(z_score(s.attacker_discounted, *s.analytic.attacker_discounted) < 4);
  CHECK(z_score(s.honest_discounted, *s.analytic.honest_discounted) < 4);
  CHECK(s.punishment.episodes_triggered > 100);
  CHECK_FALSE(s.analytic.gamma.has_value());
  bool after = false;
  for (const TraceRow& row : r.trace) {
    if (after) {
      CHECK(row.punished);
      CHECK_FALSE(row.announcement.has_value());
      CHECK(row.transmitters <= p.n_attackers);
    }
    if (row.punished) after = true;
  }
}

TEST_CASE("direct punishment above the threshold removes attack actions") {
  ScenarioParams p = params(4, 2, 0.6, 0.2, 0.2, 0.0, 0.0, 0.8);
  const CpRegion region = condition_i_bounds(p);
  p.collision_penalty = std::sqrt(region.lower_bound * region.upper_bound);
  p.direct_punishment = 1.01 * direct_threshold(2, p).value;
  const SimStats s = run_experiment(config(p, PunishmentMode::Direct, AttackerPolicyKind::Optimal, 2000, 10)).stats;
  CHECK(s.attack_actions == 0);
  CHECK(s.busy_h1_collisions == 0);
  p.direct_punishment = 0.0;
  const SimStats none = run_experiment(config(p, PunishmentMode::Direct, AttackerPolicyKind::Optimal, 2000, 10)).stats;
  CHECK(none.attack_actions > 0);
}

TEST_CASE("collision probability and primary user utility") {
  const ScenarioParams p = params(3, 1, 0.5, 0.2, 0.2, 4.0, 0.0, 0.8);
  SimConfig honest = config(p, PunishmentMode::None, AttackerPolicyKind::Honest, 5000, 40);
  const SimStats h = run_experiment(honest).stats;
  // Honest network: a collision needs every sensor to miss the PU.
  CHECK(*h.analytic.gamma == doctest::Approx(std::pow(0.2, 3)).epsilon(1e-12));
  const double se = std::sqrt(*h.analytic.gamma * (1 - *h.analytic.gamma) / h.busy_slots);
  CHECK(std::fabs(h.empirical_gamma - *h.analytic.gamma) < 4 * se);
  CHECK(h.pu_utility == doctest::Approx((1 - h.empirical_gamma) * 1.0 + h.empirical_gamma * 3 * 4.0));
  SimConfig attack = honest;
  attack.policy = AttackerPolicyKind::Fixed;
  attack.fixed_table.assign(6, ActionProfile{1, 1});
  const SimStats a = run_experiment(attack).stats;
  CHECK(a.empirical_gamma > h.empirical_gamma);
  CHECK(*a.analytic.gamma > *h.analytic.gamma);
}

TEST_CASE("heterogeneous scenarios") {
  HeteroParams hp;
  hp.base = params(4, 1, 0.6, 0.2, 0.2, 3.0, 0.0, 0.8);
  hp.p_false_alarm_attacker = 0.1;
  hp.p_missed_detection_attacker = 0.3;
  hp.rate_attacker = 2.0;
  hp.rates_honest = {1.0, 0.5, 1.5};
  SimConfig c = config(hp.base, PunishmentMode::None, AttackerPolicyKind::Optimal, 4000, 40, 11);
  c.hetero = hp;
  const SimStats s = run_experiment(c).stats;
  CHECK(z_score(s.attacker_per_slot, *s.analytic.attacker_per_slot) < 4);
  CHECK(z_score(s.honest_per_slot, *s.analytic.honest_per_slot) < 4);
  CHECK(s.attack_actions > 0);
  c.mode = PunishmentMode::Indirect;
  CHECK_FALSE(validate(c).empty());
}

TEST_CASE("trace csv") {
  SimConfig c = config(kNoisy, PunishmentMode::Indirect, AttackerPolicyKind::Optimal, 30, 1);
  c.trace_slots = 10;
  const SimResult r = run_experiment(c);
  std::ostringstream os;
  write_trace_csv(os, r.trace);
  const std::string csv = os.str();
  CHECK(csv.rfind(
            "slot,channel_state,honest_busy,attacker_busy,announcement,transmitters,collision,penalties,"
            "punishment_flag\n",
            0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 11);
}
