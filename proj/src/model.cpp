#include "csd/model.hpp"

#include <cmath>
#include <stdexcept>

#include "csd/posterior.hpp"

namespace csd {
namespace {

bool open_unit(double p) { return std::isfinite(p) && p > 0.0 && p < 1.0; }

std::string join(const std::vector<Violation>& v) {
  std::string out = "invalid parameters:";
  for (const auto& e : v) {
    out += " [" + e.field + ": " + e.message + "]";
  }
  return out;
}

}  // namespace

std::vector<Violation> validate(const ScenarioParams& p) {
  std::vector<Violation> out;
  if (p.n_total < 2) out.push_back({"n_total", "n_total >= 2"});
  if (p.n_attackers < 1) out.push_back({"n_attackers", "n_attackers >= 1"});
  if (p.n_attackers > p.n_total - 1) {
    out.push_back({"n_attackers", "n_attackers <= n_total-1"});
  }
  if (!open_unit(p.p_idle)) out.push_back({"p_idle", "0 < p_idle < 1"});
  if (!open_unit(p.p_false_alarm)) {
    out.push_back({"p_false_alarm", "0 < p_false_alarm < 1"});
  }
  if (!open_unit(p.p_missed_detection)) {
    out.push_back({"p_missed_detection", "0 < p_missed_detection < 1"});
  }
  if (!(p.p_false_alarm + p.p_missed_detection < 1.0)) {
    out.push_back({"p_false_alarm", "p_false_alarm + p_missed_detection < 1"});
  }
  if (!(std::isfinite(p.collision_penalty) && p.collision_penalty >= 0.0)) {
    out.push_back({"collision_penalty", "collision_penalty >= 0 and finite"});
  }
  if (!(std::isfinite(p.direct_punishment) && p.direct_punishment >= 0.0)) {
    out.push_back({"direct_punishment", "direct_punishment >= 0 and finite"});
  }
  if (!open_unit(p.discount)) out.push_back({"discount", "0 < discount < 1"});
  if (!(std::isfinite(p.total_rate) && p.total_rate > 0.0)) {
    out.push_back({"total_rate", "total_rate > 0 and finite"});
  }
  return out;
}

std::vector<Violation> validate(const HeteroParams& h) {
  std::vector<Violation> out = validate(h.base);
  if (h.base.n_attackers != 1) {
    out.push_back({"n_attackers", "heterogeneous scenarios have exactly one attacker"});
  }
  if (h.base.total_rate != 1.0) {
    out.push_back({"total_rate", "heterogeneous scenarios use explicit rates; total_rate must be 1"});
  }
  if (!open_unit(h.p_false_alarm_attacker)) {
    out.push_back({"p_false_alarm_attacker", "0 < p_false_alarm_attacker < 1"});
  }
  if (!open_unit(h.p_missed_detection_attacker)) {
    out.push_back({"p_missed_detection_attacker", "0 < p_missed_detection_attacker < 1"});
  }
  if (!(std::isfinite(h.rate_attacker) && h.rate_attacker > 0.0)) {
    out.push_back({"rate_attacker", "rate_attacker > 0 and finite"});
  }
  if (h.base.n_total >= 2 && h.rates_honest.size() != static_cast<size_t>(h.base.n_total - 1)) {
    out.push_back({"rates_honest", "rates_honest must have n_total-1 entries"});
  }
  for (size_t i = 0; i < h.rates_honest.size(); ++i) {
    double r = h.rates_honest[i];
    if (!(std::isfinite(r) && r > 0.0)) {
      out.push_back({"rates_honest[" + std::to_string(i) + "]", "rate > 0 and finite"});
    }
  }
  return out;
}

void require_valid(const ScenarioParams& params) {
  auto v = validate(params);
  if (!v.empty()) throw std::invalid_argument(join(v));
}

void require_valid(const HeteroParams& params) {
  auto v = validate(params);
  if (!v.empty()) throw std::invalid_argument(join(v));
}

ScenarioParams unit_rate(const ScenarioParams& params) {
  ScenarioParams out = params;
  out.collision_penalty = params.collision_penalty / params.total_rate;
  out.direct_punishment = params.direct_punishment / params.total_rate;
  out.total_rate = 1.0;
  return out;
}

ScenarioParams with_attackers(ScenarioParams params, int n_attackers) {
  params.n_attackers = n_attackers;
  return params;
}

ScenarioParams with_collision_penalty(ScenarioParams params, double collision_penalty) {
  params.collision_penalty = collision_penalty;
  return params;
}

ScenarioParams with_direct_punishment(ScenarioParams params, double direct_punishment) {
  params.direct_punishment = direct_punishment;
  return params;
}

ScenarioParams with_discount(ScenarioParams params, double discount) {
  params.discount = discount;
  return params;
}

std::string_view to_string(TransmissionCase c) {
  return c == TransmissionCase::NonAggressive ? "NT" : "AT";
}

std::string_view to_string(CooperationCase c) {
  return c == CooperationCase::Weak ? "WC" : "SC";
}

double a4_bound(const ScenarioParams& params) {
  const double odds = params.p_idle / (1.0 - params.p_idle);
  return odds * (1.0 - params.p_false_alarm) / params.p_missed_detection * params.total_rate;
}

bool check_a4(const ScenarioParams& params) {
  require_valid(params);
  return params.collision_penalty > a4_bound(params);
}

// P^I - M P^B C_p compared with zero through the likelihood ratio:
// the sign is that of L - ln(M C_p).
static double attack_margin(int group, int busy, const ScenarioParams& params) {
  const ScenarioParams u = unit_rate(params);
  const double l = log_likelihood_ratio(group, busy, u);
  const double cost = static_cast<double>(u.n_attackers) * u.collision_penalty;
  if (cost <= 0.0) return 1.0;
  return l - std::log(cost);
}

TransmissionCase classify_transmission_case(const ScenarioParams& params) {
  require_valid(params);
  return attack_margin(params.n_total, 1, params) < 0.0 ? TransmissionCase::NonAggressive
                                                         : TransmissionCase::Aggressive;
}

CooperationCase classify_cooperation_case(const ScenarioParams& params) {
  require_valid(params);
  return attack_margin(params.n_attackers, 0, params) <= 0.0 ? CooperationCase::Weak
                                                              : CooperationCase::Strong;
}

}  // namespace csd
