#include "csd/indirect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "csd/fusion.hpp"
#include "csd/posterior.hpp"

namespace csd {
namespace {

// Joint probabilities Pr(idle, k busy) and Pr(busy, k busy) for the full group.
struct CountTerms {
  std::vector<double> idle;
  std::vector<double> busy;
};

CountTerms count_terms(const ScenarioParams& p) {
  CountTerms t;
  for (int k = 0; k <= p.n_total; ++k) {
    t.idle.push_back(joint_idle_count(p.n_total, k, p));
    t.busy.push_back(joint_busy_count(p.n_total, k, p));
  }
  return t;
}

// Pieces of the dishonest value for attack set {k <= z}: expected reward per
// slot and per-slot trigger probability.
struct AttackSums {
  double reward = 0.0;
  double trigger = 0.0;
};

AttackSums attack_sums(const ScenarioParams& p, const CountTerms& t, int z) {
  AttackSums s;
  const double m = p.n_attackers;
  for (int k = 0; k <= z; ++k) {
    s.reward += p.total_rate * t.idle[k] - m * t.busy[k] * p.collision_penalty;
    s.trigger += t.busy[k];
  }
  return s;
}

// (1 - delta) times the dishonest value, written in eps = 1 - delta.
double scaled_dishonest(const AttackSums& s, double post, double eps) {
  return (eps * s.reward + (1.0 - eps) * s.trigger * post) / (eps + (1.0 - eps) * s.trigger);
}

double honest_per_slot(const ScenarioParams& p, const CountTerms& t) {
  const double m = p.n_attackers;
  return m * (p.total_rate * t.idle[0] / p.n_total - t.busy[0] * p.collision_penalty);
}

}  // namespace

double post_punishment_value(const ScenarioParams& params) {
  require_valid(params);
  const int m = params.n_attackers;
  double v = 0.0;
  for (int ka = 0; ka <= m; ++ka) {
    const double gain = params.total_rate * joint_idle_count(m, ka, params) -
                        m * joint_busy_count(m, ka, params) * params.collision_penalty;
    v += std::max(0.0, gain);
  }
  return v;
}

double lr_honest(const ScenarioParams& params) {
  require_valid(params);
  return honest_per_slot(params, count_terms(params)) / (1.0 - params.discount);
}

double lr_dishonest_at(const ScenarioParams& params, int z) {
  require_valid(params);
  if (z < 0 || z > params.n_total) throw std::invalid_argument("z outside [0, N]");
  const AttackSums s = attack_sums(params, count_terms(params), z);
  const double eps = 1.0 - params.discount;
  return scaled_dishonest(s, post_punishment_value(params), eps) / eps;
}

LongTermRewards lr_dishonest(const ScenarioParams& params) {
  require_valid(params);
  LongTermRewards out;
  out.cooperation_case = classify_cooperation_case(params);
  out.transmission_case = classify_transmission_case(params);
  out.lr_honest = lr_honest(params);
  if (out.transmission_case == TransmissionCase::NonAggressive) {
    out.lr_dishonest = lr_dishonest_at(params, 0);
  } else {
    int best_z = 0;
    double best = lr_dishonest_at(params, 0);
    for (int z = 1; z <= params.n_total; ++z) {
      const double v = lr_dishonest_at(params, z);
      if (v > best) {
        best = v;
        best_z = z;
      }
    }
    out.lr_dishonest = best;
    out.z_star = best_z;
  }
  out.attack_prevented = out.lr_honest >= out.lr_dishonest;
  return out;
}

std::string_view to_string(DeltaStatus s) {
  return s == DeltaStatus::Interior ? "interior" : "no_delta_prevents";
}

DeltaThreshold delta_threshold_formula(const ScenarioParams& params, CooperationCase formula_case) {
  require_valid(params);
  const ScenarioParams u = unit_rate(params);
  const int n = u.n_total;
  const int m = u.n_attackers;
  const double cp = u.collision_penalty;
  // (1-delta)/delta = x. The per-slot terms are divided by Pr(idle, all N
  // idle) so that neither side underflows before the difference is taken.
  const double rho = std::exp(-log_prefactor(n, u));
  const double own = 1.0 / n - rho * cp;
  double after = 0.0;
  if (formula_case == CooperationCase::Strong) {
    const double rho_m = std::exp(-log_prefactor(m, u));
    const double scale = std::exp((m - n) * std::log1p(-u.p_false_alarm));
    after = scale * (1.0 / m - rho_m * cp);
  }
  const double diff = own - after;
  const double x = joint_busy_count(n, 0, u) * diff / (1.0 / m - 1.0 / n);

  DeltaThreshold out;
  out.formula_case = formula_case;
  out.n_attackers = m;
  if (diff > 0.0 && std::isfinite(x)) {
    out.status = DeltaStatus::Interior;
    out.value = 1.0 / (1.0 + x);
    out.complement = x / (1.0 + x);
  } else {
    out.status = DeltaStatus::NoDeltaPrevents;
    out.value = 1.0;
    out.complement = 0.0;
  }
  return out;
}

DeltaThreshold delta_threshold(const ScenarioParams& params) {
  if (classify_transmission_case(params) != TransmissionCase::NonAggressive) {
    throw std::domain_error("delta threshold is defined for the non-aggressive case only");
  }
  return delta_threshold_formula(params, classify_cooperation_case(params));
}

std::optional<DeltaThreshold> worst_case_delta_threshold(const ScenarioParams& params) {
  require_valid(params);
  std::optional<DeltaThreshold> worst;
  for (int m = 1; m <= params.n_total - 1; ++m) {
    const ScenarioParams p = with_attackers(params, m);
    if (classify_transmission_case(p) != TransmissionCase::NonAggressive) continue;
    const DeltaThreshold t = delta_threshold(p);
    if (!worst || t.complement < worst->complement) worst = t;
  }
  return worst;
}

std::optional<DeltaCrossing> delta_threshold_oracle(const ScenarioParams& params) {
  require_valid(params);
  const CountTerms t = count_terms(params);
  const double h = honest_per_slot(params, t);
  const double post = post_punishment_value(params);
  std::vector<AttackSums> sums;
  for (int z = 0; z <= params.n_total; ++z) sums.push_back(attack_sums(params, t, z));

  // Positive when honest behavior is at least as good as every attack set.
  auto margin = [&](double eps) {
    double best = scaled_dishonest(sums[0], post, eps);
    for (size_t z = 1; z < sums.size(); ++z) best = std::max(best, scaled_dishonest(sums[z], post, eps));
    return h - best;
  };

  double lo = 1e-250;        // delta near 1
  double hi = 1.0 - 1e-12;   // delta near 0
  if (!(margin(lo) >= 0.0 && margin(hi) < 0.0)) return std::nullopt;
  for (int it = 0; it < 400; ++it) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (!(mid > lo && mid < hi)) break;
    if (margin(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  DeltaCrossing out;
  out.complement = lo;
  out.value = 1.0 - lo;
  return out;
}

}  // namespace csd
