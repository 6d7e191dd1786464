#include <limits>

#include "csd/model.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace csd;
using testing_support::params;

namespace {

bool has_field(const std::vector<Violation>& v, const std::string& field, const std::string& msg) {
  for (const auto& e : v) {
    if (e.field == field && e.message.find(msg) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("validate accepts the six-SU two-attacker setting") {
  CHECK(validate(params(6, 2, 0.6, 0.08, 0.08)).empty());
}

TEST_CASE("validate rejects M = N") {
  auto v = validate(params(6, 6, 0.6, 0.08, 0.08));
  CHECK(has_field(v, "n_attackers", "n_attackers <= n_total-1"));
}

TEST_CASE("validate rejects uninformative sensing") {
  auto v = validate(params(6, 2, 0.6, 0.6, 0.5));
  CHECK(has_field(v, "p_false_alarm", "p_false_alarm + p_missed_detection < 1"));
}

TEST_CASE("validate reports every violation") {
  ScenarioParams p = params(1, 0, 1.5, -0.1, 2.0, -1.0, -2.0, 1.0);
  p.total_rate = 0.0;
  auto v = validate(p);
  CHECK(v.size() >= 9);
  CHECK(has_field(v, "n_total", ">= 2"));
  CHECK(has_field(v, "n_attackers", ">= 1"));
  CHECK(has_field(v, "p_idle", "p_idle"));
  CHECK(has_field(v, "collision_penalty", ">= 0"));
  CHECK(has_field(v, "direct_punishment", ">= 0"));
  CHECK(has_field(v, "discount", "discount"));
  CHECK(has_field(v, "total_rate", "> 0"));
}

TEST_CASE("validate is total on non-finite input") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  ScenarioParams p = params(6, 2, nan, inf, -inf, nan, inf, nan);
  p.total_rate = nan;
  CHECK_FALSE(validate(p).empty());
  CHECK_THROWS_AS(require_valid(p), std::invalid_argument);
}

TEST_CASE("hetero validation") {
  HeteroParams h;
  h.base = params(4, 1, 0.6, 0.05, 0.05);
  h.p_false_alarm_attacker = 0.05;
  h.p_missed_detection_attacker = 0.05;
  h.rates_honest = {1.0, 1.0, 1.0};
  CHECK(validate(h).empty());
  h.rates_honest.pop_back();
  CHECK(has_field(validate(h), "rates_honest", "n_total-1"));
  h.rates_honest = {1.0, 0.0, 1.0};
  CHECK(has_field(validate(h), "rates_honest[1]", "rate > 0"));
  h.rates_honest = {1.0, 1.0, 1.0};
  h.base.n_attackers = 2;
  CHECK(has_field(validate(h), "n_attackers", "exactly one"));
}

TEST_CASE("A4 boundary") {
  auto ex = testing_support::exact(6, 2, "0.6", "0.08", "0.08");
  CHECK(oracle::a4_bound(ex) == oracle::dec("17.25"));
  CHECK(a4_bound(params(6, 2, 0.6, 0.08, 0.08)) == doctest::Approx(17.25).epsilon(1e-15));
  CHECK(check_a4(params(6, 2, 0.6, 0.08, 0.08, 20.0)));
  CHECK_FALSE(check_a4(params(6, 2, 0.6, 0.08, 0.08, 17.25)));
  CHECK_FALSE(check_a4(params(6, 2, 0.6, 0.08, 0.08, 0.0)));
}

TEST_CASE("A4 scales with the channel rate") {
  ScenarioParams p = params(6, 2, 0.6, 0.08, 0.08, 30.0);
  p.total_rate = 2.0;
  CHECK_FALSE(check_a4(p));
  p.collision_penalty = 40.0;
  CHECK(check_a4(p));
}

TEST_CASE("transmission case") {
  // P^I/P^B after one busy decision among 11 is about 5.3e9, so M C_p must exceed that.
  CHECK(classify_transmission_case(params(11, 2, 0.6, 0.08, 0.08, 1e9)) == TransmissionCase::Aggressive);
  CHECK(classify_transmission_case(params(11, 2, 0.6, 0.08, 0.08, 1e10)) == TransmissionCase::NonAggressive);
  CHECK(classify_transmission_case(params(11, 2, 0.6, 0.08, 0.08, 0.0)) == TransmissionCase::Aggressive);
  // N = 2, P_I = 1/2, P_f = P_m = 1/4: one busy and one idle decision cancel, so the
  // boundary is M C_p = 1.
  CHECK(classify_transmission_case(params(2, 1, 0.5, 0.25, 0.25, 1.0)) == TransmissionCase::Aggressive);
  CHECK(classify_transmission_case(params(2, 1, 0.5, 0.25, 0.25, 1.0000001)) ==
        TransmissionCase::NonAggressive);
}

TEST_CASE("cooperation case") {
  for (double cp : {20.0, 100.0, 1e4}) {
    ScenarioParams p = params(6, 1, 0.6, 0.08, 0.08, cp);
    REQUIRE(check_a4(p));
    CHECK(classify_cooperation_case(p) == CooperationCase::Weak);
  }
  CHECK(classify_cooperation_case(params(11, 10, 0.6, 0.08, 0.08, 1e4)) == CooperationCase::Strong);
  CHECK(classify_cooperation_case(params(6, 2, 0.6, 0.08, 0.08, 0.0)) == CooperationCase::Strong);
  // M = 1 with P_I = 1/2 and (1-P_f)/P_m = 3 puts the boundary at C_p = 3; it resolves to weak.
  CHECK(classify_cooperation_case(params(2, 1, 0.5, 0.25, 0.25, 3.0)) == CooperationCase::Weak);
}

TEST_CASE("strong cooperation is upward closed in M under A4") {
  for (double cp : {20.0, 200.0, 5e3, 1e5, 3e6}) {
    for (int n : {4, 8, 11, 16}) {
      bool seen_strong = false;
      for (int m = 1; m < n; ++m) {
        ScenarioParams p = params(n, m, 0.6, 0.08, 0.08, cp);
        REQUIRE(check_a4(p));
        const bool strong = classify_cooperation_case(p) == CooperationCase::Strong;
        if (seen_strong) CHECK(strong);
        seen_strong = seen_strong || strong;
      }
    }
  }
}

TEST_CASE("unit rate rescales penalties") {
  ScenarioParams p = params(6, 2, 0.6, 0.08, 0.08, 100.0, 50.0);
  p.total_rate = 4.0;
  ScenarioParams u = unit_rate(p);
  CHECK(u.collision_penalty == 25.0);
  CHECK(u.direct_punishment == 12.5);
  CHECK(u.total_rate == 1.0);
  CHECK(classify_cooperation_case(p) == classify_cooperation_case(u));
  CHECK(classify_transmission_case(p) == classify_transmission_case(u));
}
