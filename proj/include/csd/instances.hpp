#pragma once

#include <cstdint>
#include <random>

#include "csd/model.hpp"

namespace csd {

// Ranges for randomized scenario draws.
struct InstanceRanges {
  int n_min = 2;
  int n_max = 12;
  double p_idle_min = 0.1;
  double p_idle_max = 0.9;
  double error_min = 0.01;
  double error_max = 0.1;
  double discount_min = 0.5;
  double discount_max = 0.95;
};

// N, M, P_I, P_f, P_m and discount drawn uniformly; C_p = 0.
ScenarioParams draw_scenario(std::mt19937_64& rng, const InstanceRanges& ranges);

// Same, with C_p log-uniform strictly inside the Condition I interval.
ScenarioParams draw_region_ii(std::mt19937_64& rng, const InstanceRanges& ranges);

// Log-uniform draw in [lo, hi].
double log_uniform(std::mt19937_64& rng, double lo, double hi);

}  // namespace csd
