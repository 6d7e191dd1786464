#include "csd/instances.hpp"

#include <cmath>

#include "csd/fusion.hpp"

namespace csd {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

ScenarioParams draw_scenario(std::mt19937_64& rng, const InstanceRanges& r) {
  std::uniform_int_distribution<int> n_dist(r.n_min, r.n_max);
  std::uniform_real_distribution<double> prior(r.p_idle_min, r.p_idle_max);
  std::uniform_real_distribution<double> err(r.error_min, r.error_max);
  std::uniform_real_distribution<double> disc(r.discount_min, r.discount_max);
  ScenarioParams p;
  p.n_total = n_dist(rng);
  std::uniform_int_distribution<int> m_dist(1, p.n_total - 1);
  p.n_attackers = m_dist(rng);
  p.p_idle = prior(rng);
  p.p_false_alarm = err(rng);
  p.p_missed_detection = err(rng);
  p.discount = disc(rng);
  return p;
}

ScenarioParams draw_region_ii(std::mt19937_64& rng, const InstanceRanges& ranges) {
  ScenarioParams p = draw_scenario(rng, ranges);
  const CpRegion r = condition_i_bounds(p);
  // Keep a margin from both edges so the region does not flip under rounding.
  const double lo = r.lower_bound * (1.0 + 1e-6);
  const double hi = r.upper_bound * (1.0 - 1e-6);
  p.collision_penalty = log_uniform(rng, lo, hi);
  return p;
}

}  // namespace csd
