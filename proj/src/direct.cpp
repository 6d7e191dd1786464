#include "csd/direct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "csd/fusion.hpp"
#include "csd/oneshot.hpp"
#include "csd/posterior.hpp"

namespace csd {

std::string_view to_string(BindingConstraint b) {
  switch (b) {
    case BindingConstraint::None:
      return "none";
    case BindingConstraint::FalseIdleDeviation:
      return "false_idle_deviation";
    case BindingConstraint::TransmitAfterBusy:
      return "transmit_after_busy";
  }
  return "?";
}

DirectThreshold direct_threshold(int n_attackers, const ScenarioParams& params) {
  const ScenarioParams p = with_attackers(params, n_attackers);
  require_valid(p);
  const double m = n_attackers;
  const double n = p.n_total;
  const double r = p.total_rate;
  const double lp = log_prefactor(p.n_total, p);
  const double after_busy = r * std::exp(lp + log_busy_step(p)) / m - p.collision_penalty;
  const double false_idle = r * std::exp(lp) * (1.0 / m - 1.0 / n);

  DirectThreshold out;
  out.per_constraint_values = {after_busy, false_idle};
  if (after_busy <= 0.0 && false_idle <= 0.0) {
    out.value = 0.0;
    out.binding = BindingConstraint::None;
  } else if (false_idle >= after_busy) {
    out.value = false_idle;
    out.binding = BindingConstraint::FalseIdleDeviation;
  } else {
    out.value = after_busy;
    out.binding = BindingConstraint::TransmitAfterBusy;
  }
  out.log_value = out.value > 0.0 ? std::log(out.value) : -std::numeric_limits<double>::infinity();
  return out;
}

int count_attacking_states(const ScenarioParams& params) {
  int attacks = 0;
  for (int k = 0; k <= params.n_honest(); ++k) {
    for (int mb = 0; mb <= params.n_attackers; ++mb) {
      if (best_response({k, mb}, params, true).reward.is_attack) ++attacks;
    }
  }
  return attacks;
}

std::optional<double> direct_threshold_oracle(int n_attackers, const ScenarioParams& params) {
  const ScenarioParams base = with_attackers(params, n_attackers);
  require_valid(base);
  auto attack_free = [&](double cb) {
    return count_attacking_states(with_direct_punishment(base, cb)) == 0;
  };
  if (attack_free(0.0)) return 0.0;
  constexpr double kCeiling = 1e300;
  if (!attack_free(kCeiling)) return std::nullopt;

  double lo = 0.0;
  double hi = 1.0;
  while (!attack_free(hi)) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (attack_free(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

DirectThreshold worst_case_threshold(const ScenarioParams& params) {
  return direct_threshold(1, params);
}

HeteroThreshold direct_threshold_hetero(const HeteroParams& h) {
  require_valid(h);
  const ScenarioParams& b = h.base;
  const double n = b.n_total;
  const double pfa = h.p_false_alarm_attacker;
  const double pma = h.p_missed_detection_attacker;
  // Honest N-1 sensors all idle, prior included.
  const double log_a = log_prefactor(b.n_total - 1, b);
  const double idle_factor = std::log1p(-pfa) - std::log(pma);
  const double busy_factor = std::log(pfa) - std::log1p(-pma);

  HeteroThreshold out;
  out.th1 = std::exp(log_a + idle_factor) * (n - 1.0) / n * h.rate_attacker;
  out.th2 = std::exp(log_a + busy_factor) * h.rate_attacker - b.collision_penalty;
  out.th3 = std::exp(log_a + log_busy_step(b) + std::max(idle_factor, busy_factor)) * h.rate_attacker -
            b.collision_penalty;
  out.value = std::max({out.th1, out.th2, out.th3, 0.0});
  out.binding = 1;
  if (out.th2 > out.th1 && out.th2 >= out.th3) out.binding = 2;
  if (out.th3 > out.th1 && out.th3 > out.th2) out.binding = 3;
  return out;
}

}  // namespace csd
