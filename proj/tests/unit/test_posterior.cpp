#include <cmath>
#include <random>

#include "csd/posterior.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace csd;
using testing_support::params;
using testing_support::rel_err;

TEST_CASE("posterior pinned values") {
  const ScenarioParams p = params(6, 2, 0.6, 0.08, 0.08);
  const Posterior all_idle = posterior_idle(6, 0, p);
  CHECK(all_idle.p_idle == doctest::Approx(0.99999971178168579).epsilon(1e-13));
  CHECK(all_idle.p_busy == doctest::Approx(2.8821831420455025e-07).epsilon(1e-12));
  CHECK(posterior_idle(6, 6, p).p_idle == doctest::Approx(6.4849097332651922e-07).epsilon(1e-12));
}

TEST_CASE("posterior matches the exact oracle") {
  auto ex = testing_support::exact(6, 2, "0.6", "0.08", "0.08");
  const ScenarioParams p = params(6, 2, 0.6, 0.08, 0.08);
  for (int n = 1; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      const oracle::Q pi = oracle::posterior_idle(ex, n, k);
      const Posterior post = posterior_idle(n, k, p);
      CHECK(rel_err(post.p_idle, oracle::to_double(pi)) < 1e-13);
      CHECK(rel_err(post.p_busy, oracle::to_double(1 - pi)) < 1e-13);
    }
  }
}

TEST_CASE("posterior halves sum to one and agree with the sigmoid") {
  const ScenarioParams p = params(20, 2, 0.3, 0.02, 0.07);
  for (int k = 0; k <= 20; ++k) {
    const Posterior post = posterior_idle(20, k, p);
    CHECK(post.p_idle + post.p_busy == 1.0);
    const double sig = 1.0 / (1.0 + std::exp(-post.log_likelihood_ratio));
    CHECK(std::fabs(post.p_idle - sig) <= 4 * std::numeric_limits<double>::epsilon());
  }
}

TEST_CASE("perfect sensors") {
  ScenarioParams p = params(4, 1, 0.6, 0.0, 0.0);
  CHECK(posterior_idle(4, 0, p).p_idle == 1.0);
  CHECK(posterior_idle(4, 0, p).p_busy == 0.0);
  p.p_missed_detection = 0.1;
  CHECK(posterior_idle(4, 4, p).p_idle == 0.0);
  CHECK_THROWS_AS(posterior_idle(4, 5, p), std::invalid_argument);
  CHECK_THROWS_AS(posterior_idle(4, -1, p), std::invalid_argument);
}

TEST_CASE("contradictory evidence under perfect sensors is a domain error") {
  const ScenarioParams p = params(4, 1, 0.6, 0.0, 0.0);
  CHECK_THROWS_AS(posterior_idle(4, 2, p), std::domain_error);
}

TEST_CASE("posterior strictly decreasing in k") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> err(0.01, 0.1);
  std::uniform_real_distribution<double> prior(0.05, 0.95);
  for (int draw = 0; draw < 300; ++draw) {
    const ScenarioParams p = params(20, 1, prior(rng), err(rng), err(rng));
    for (int n = 1; n <= 20; ++n) {
      for (int k = 0; k < n; ++k) {
        CHECK(posterior_idle(n, k + 1, p).log_likelihood_ratio < posterior_idle(n, k, p).log_likelihood_ratio);
      }
    }
  }
}

TEST_CASE("log-domain matches direct evaluation") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> err(0.01, 0.3);
  std::uniform_real_distribution<double> prior(0.05, 0.95);
  for (int draw = 0; draw < 50; ++draw) {
    const ScenarioParams p = params(30, 1, prior(rng), err(rng), err(rng));
    for (int n = 1; n <= 30; ++n) {
      for (int k = 0; k <= n; ++k) {
        const double a = p.p_idle * std::pow(1 - p.p_false_alarm, n - k) * std::pow(p.p_false_alarm, k);
        const double b = (1 - p.p_idle) * std::pow(p.p_missed_detection, n - k) *
                         std::pow(1 - p.p_missed_detection, k);
        const Posterior post = posterior_idle(n, k, p);
        CHECK(rel_err(post.p_idle, a / (a + b)) < 1e-12);
        CHECK(rel_err(post.p_busy, b / (a + b)) < 1e-12);
      }
    }
  }
}

TEST_CASE("report count pmf") {
  const ScenarioParams p = params(6, 2, 0.6, 0.08, 0.08);
  CHECK(report_count_pmf(6, 0, p) == doctest::Approx(0.36381310566399999).epsilon(1e-14));
  auto ex = testing_support::exact(6, 2, "0.6", "0.08", "0.08");
  for (int n = 1; n <= 15; ++n) {
    double total = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double v = report_count_pmf(n, k, p);
      CHECK(rel_err(v, oracle::to_double(oracle::pmf(ex, n, k))) < 1e-12);
      total += v;
    }
    CHECK(std::fabs(total - 1.0) < 1e-12);
  }
  CHECK(report_count_pmf(1, 1, p) == doctest::Approx(0.6 * 0.08 + 0.4 * 0.92));
  CHECK_THROWS_AS(report_count_pmf(3, 4, p), std::invalid_argument);
}

TEST_CASE("large groups use log-gamma binomials") {
  const ScenarioParams p = params(200, 1, 0.6, 0.08, 0.08);
  double total = 0.0;
  for (int k = 0; k <= 200; ++k) total += report_count_pmf(200, k, p);
  CHECK(std::fabs(total - 1.0) < 1e-10);
  CHECK(log_binomial_coefficient(61, 30) == doctest::Approx(std::log(232714176627630544.0)).epsilon(1e-12));
  CHECK(std::exp(log_binomial_coefficient(60, 30)) == doctest::Approx(118264581564861424.0).epsilon(1e-14));
}

TEST_CASE("sensing state pmf factorizes the report count") {
  const ScenarioParams p = params(7, 3, 0.45, 0.09, 0.06);
  double total = 0.0;
  for (int k = 0; k <= 4; ++k) {
    for (int mb = 0; mb <= 3; ++mb) total += sensing_state_pmf(k, mb, p);
  }
  CHECK(std::fabs(total - 1.0) < 1e-14);
  for (int s = 0; s <= 7; ++s) {
    double by_total = 0.0;
    for (int k = 0; k <= 4; ++k) {
      const int mb = s - k;
      if (mb >= 0 && mb <= 3) by_total += sensing_state_pmf(k, mb, p);
    }
    CHECK(rel_err(by_total, report_count_pmf(7, s, p)) < 1e-13);
  }
}

TEST_CASE("heterogeneous posterior collapses to the homogeneous one") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> err(0.01, 0.1);
  for (int draw = 0; draw < 100; ++draw) {
    HeteroParams h;
    h.base = params(11, 1, 0.6, err(rng), err(rng));
    h.p_false_alarm_attacker = h.base.p_false_alarm;
    h.p_missed_detection_attacker = h.base.p_missed_detection;
    h.rates_honest.assign(10, 1.0);
    for (int k = 0; k <= 10; ++k) {
      for (int d = 0; d <= 1; ++d) {
        const Posterior a = posterior_idle_hetero(k, d, h);
        const Posterior b = posterior_idle(11, k + d, h.base);
        CHECK(rel_err(a.p_idle, b.p_idle) < 1e-13);
        CHECK(rel_err(a.p_busy, b.p_busy) < 1e-12);
      }
    }
  }
}

TEST_CASE("heterogeneous posterior pinned and limit values") {
  HeteroParams h;
  h.base = params(11, 1, 0.6, 0.05, 0.05);
  h.p_false_alarm_attacker = 0.05;
  h.p_missed_detection_attacker = 0.05;
  h.rates_honest.assign(10, 1.0);
  CHECK(posterior_idle_hetero(0, 0, h).p_busy == doctest::Approx(5.7229391793965309e-15).epsilon(1e-10));
  CHECK_THROWS_AS(posterior_idle_hetero(11, 0, h), std::invalid_argument);
  CHECK_THROWS_AS(posterior_idle_hetero(0, 2, h), std::invalid_argument);
  // An attacker sensor that almost never false-alarms makes its busy decision
  // outweigh ten idle honest decisions.
  h.p_false_alarm_attacker = 1e-30;
  CHECK(posterior_idle_hetero(0, 1, h).p_idle < 1e-15);
  h.p_false_alarm_attacker = 0.0;
  CHECK(posterior_idle_hetero(0, 1, h).p_idle == 0.0);
  CHECK(posterior_idle_hetero(0, 0, h).p_idle > 0.999);
}
