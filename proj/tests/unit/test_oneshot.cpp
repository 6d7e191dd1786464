#include <random>
#include <sstream>

#include "csd/instances.hpp"
#include "csd/oneshot.hpp"
#include "csd/posterior.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace csd;
using testing_support::params;

namespace {

// |a - b| relative to the size of the terms that produced b.
bool close(double a, double b, double scale, double tol = 1e-12) {
  return std::fabs(a - b) <= tol * std::max(scale, 1e-300);
}

}  // namespace

TEST_CASE("honest-equivalent profiles") {
  const ScenarioParams p = params(6, 2, 0.6, 0.08, 0.08, 1e4);
  CHECK(honest_equivalent_profile({0, 0}, p) == ActionProfile{0, 2});
  CHECK(honest_equivalent_profile({0, 2}, p) == ActionProfile{2, 0});
  CHECK(honest_equivalent_profile({3, 0}, p) == ActionProfile{0, 0});
}

TEST_CASE("single-slot rewards in the all-idle state") {
  const ScenarioParams p = params(6, 2, 0.6, 0.08, 0.08, 1e4);
  const Posterior post = posterior_idle(6, 0, p);
  const RewardBreakdown attack = evaluate_profile({0, 0}, {1, 2}, p, false);
  CHECK(attack.announcement == Announcement::H1);
  CHECK(attack.is_attack);
  CHECK(attack.attacker_aggregate == doctest::Approx(post.p_idle - 2 * post.p_busy * 1e4));
  CHECK(attack.honest_per_su == doctest::Approx(-post.p_busy * 1e4));
  const RewardBreakdown honest = evaluate_profile({0, 0}, {0, 2}, p, false);
  CHECK(honest.announcement == Announcement::H0);
  CHECK_FALSE(honest.is_attack);
  CHECK(honest.attacker_aggregate == doctest::Approx(2 * (post.p_idle / 6 - post.p_busy * 1e4)));
  CHECK(honest.honest_per_su == doctest::Approx(post.p_idle / 6 - post.p_busy * 1e4));
}

TEST_CASE("no transmission under a busy announcement earns nothing") {
  const ScenarioParams p = params(6, 2, 0.6, 0.08, 0.08, 1e4, 1e6);
  for (int k = 1; k <= 4; ++k) {
    for (int mb = 0; mb <= 2; ++mb) {
      for (int b = 0; b <= 2; ++b) {
        const RewardBreakdown r = evaluate_profile({k, mb}, {b, 0}, p, true);
        CHECK(r.attacker_aggregate == 0.0);
        CHECK(r.honest_per_su == 0.0);
      }
    }
  }
}

TEST_CASE("reward under a busy announcement does not depend on how many transmit") {
  const ScenarioParams p = params(9, 4, 0.55, 0.07, 0.04, 3e6, 2e7);
  for (int k = 0; k <= 5; ++k) {
    for (int mb = 0; mb <= 4; ++mb) {
      const double ref = evaluate_profile({k, mb}, {1, 1}, p, true).attacker_aggregate;
      for (int t = 2; t <= 4; ++t) CHECK(evaluate_profile({k, mb}, {1, t}, p, true).attacker_aggregate == ref);
    }
  }
}

TEST_CASE("invalid states and profiles") {
  const ScenarioParams p = params(6, 2, 0.6, 0.08, 0.08, 1e4);
  CHECK_THROWS_AS(evaluate_profile({5, 0}, {0, 0}, p, false), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_profile({0, 3}, {0, 0}, p, false), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_profile({0, 0}, {3, 0}, p, false), std::invalid_argument);
  CHECK_THROWS_AS(best_response({-1, 0}, p, false), std::invalid_argument);
}

TEST_CASE("best response matches the no-punishment action classes") {
  std::mt19937_64 rng(77);
  InstanceRanges ranges;
  for (int draw = 0; draw < 100; ++draw) {
    const ScenarioParams p = draw_region_ii(rng, ranges);
    const oracle::Params ex = testing_support::exact_of(p);
    const int m = p.n_attackers;
    for (int k = 0; k <= p.n_honest(); ++k) {
      for (int mb = 0; mb <= m; ++mb) {
        const double pi = oracle::to_double(oracle::posterior_idle(ex, p.n_total, k + mb));
        const double pb = oracle::to_double(1 - oracle::posterior_idle(ex, p.n_total, k + mb));
        const double cost = m * pb * p.collision_penalty;
        const BestResponse br = best_response({k, mb}, p, false);
        if (k + mb == 0) {
          // Report busy, everyone transmits.
          CHECK(br.reward.announcement == Announcement::H1);
          CHECK(br.profile.busy_reports >= 1);
          CHECK(br.profile.transmitters == m);
          CHECK(close(br.reward.attacker_aggregate, pi - cost, pi + cost));
          CHECK(close(br.reward.honest_per_su, -pb * p.collision_penalty, pb * p.collision_penalty));
        } else if (pi >= cost) {
          CHECK(br.reward.is_attack);
          CHECK(br.reward.announcement == Announcement::H1);
          CHECK(br.profile.transmitters == m);
          CHECK(close(br.reward.attacker_aggregate, pi - cost, pi + cost));
        } else {
          CHECK_FALSE(br.reward.is_attack);
          CHECK(br.profile.transmitters == 0);
          CHECK(br.reward.attacker_aggregate == 0.0);
          CHECK(br.reward.honest_per_su == 0.0);
        }
      }
    }
  }
}

TEST_CASE("attack switch follows the sign condition across a C_p sweep") {
  const ScenarioParams base = params(8, 3, 0.6, 0.08, 0.08);
  for (int k = 1; k <= 3; ++k) {
    const Posterior post = posterior_idle(8, k, base);
    const double boundary = post.p_idle / (3 * post.p_busy);
    for (double f : {0.5, 0.9, 0.999, 1.001, 1.1, 2.0}) {
      const ScenarioParams p = with_collision_penalty(base, boundary * f);
      const BestResponse br = best_response({k, 0}, p, false);
      CHECK(br.reward.is_attack == (f < 1.0));
    }
  }
}

TEST_CASE("honest SUs never gain from an attack inside Condition I") {
  std::mt19937_64 rng(91);
  InstanceRanges ranges;
  for (int draw = 0; draw < 200; ++draw) {
    ScenarioParams p = draw_region_ii(rng, ranges);
    p.direct_punishment = log_uniform(rng, 1.0, 1e12);
    for (bool direct : {false, true}) {
      for (const BehaviorRow& row : behavior_table(p, direct)) {
        if (row.reward.is_attack) CHECK(row.reward.honest_per_su <= 0.0);
      }
    }
  }
}

TEST_CASE("behavior table layout and csv") {
  const ScenarioParams p = params(6, 2, 0.6, 0.08, 0.08, 1e4);
  const auto table = behavior_table(p, false);
  REQUIRE(table.size() == 15);
  CHECK(table.front().reward.is_attack);
  double mass = 0.0;
  for (const auto& row : table) mass += row.probability;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
  std::ostringstream os;
  write_behavior_csv(os, table);
  const std::string csv = os.str();
  CHECK(csv.rfind("honest_busy,attacker_busy,b,M_T,announcement,attacker_reward,honest_reward,is_attack\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 16);
}

TEST_CASE("channel rate scales the idle share only") {
  ScenarioParams p = params(6, 2, 0.6, 0.08, 0.08, 1e4);
  p.total_rate = 2.0;
  const Posterior post = posterior_idle(6, 0, p);
  const RewardBreakdown r = evaluate_profile({0, 0}, {0, 2}, p, false);
  CHECK(r.attacker_aggregate == doctest::Approx(2 * (2 * post.p_idle / 6 - post.p_busy * 1e4)));
}

TEST_CASE("heterogeneous single-slot model") {
  HeteroParams h;
  h.base = params(5, 1, 0.6, 0.05, 0.05, 1e4, 0.0);
  h.p_false_alarm_attacker = 0.05;
  h.p_missed_detection_attacker = 0.05;
  h.rates_honest.assign(4, 1.0);
  // With equal detection and unit rates it matches the homogeneous model.
  const ScenarioParams p = h.base;
  for (int k = 0; k <= 4; ++k) {
    for (int d = 0; d <= 1; ++d) {
      for (int rep = 0; rep <= 1; ++rep) {
        for (int tx = 0; tx <= 1; ++tx) {
          const RewardBreakdown a = evaluate_hetero({k, d}, {rep, tx}, h, true);
          const RewardBreakdown b = evaluate_profile({k, d}, {rep, tx}, p, true);
          CHECK(a.attacker_aggregate == doctest::Approx(b.attacker_aggregate).epsilon(1e-12));
          CHECK(a.is_attack == b.is_attack);
          CHECK(a.announcement == b.announcement);
        }
      }
      CHECK(hetero_state_pmf({k, d}, h) == doctest::Approx(sensing_state_pmf(k, d, p)).epsilon(1e-13));
    }
  }
  const HeteroBestResponse br = best_response_hetero({0, 0}, h, false);
  CHECK(br.reward.is_attack);
  CHECK(br.action == HeteroAction{1, 1});
}
