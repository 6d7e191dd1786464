#pragma once

#include "csd/model.hpp"

namespace csd {

// Channel-state posterior given the local decisions of a group of sensors.
struct Posterior {
  double p_idle = 0.0;
  double p_busy = 0.0;
  double log_likelihood_ratio = 0.0;  // ln of idle-vs-busy joint likelihood, prior included
};

// Builds a posterior from ln[Pr(idle, D) / Pr(busy, D)]. The smaller side is
// evaluated directly, the larger as its complement.
Posterior posterior_from_log_ratio(double log_ratio);

// L(n,k) = ln[P_I/(1-P_I)] + (n-k) ln[(1-P_f)/P_m] + k ln[P_f/(1-P_m)].
// Accepts P_f or P_m at 0 or 1; a 0 * inf term counts as 0.
double log_likelihood_ratio(int group_size, int busy_count, const ScenarioParams& params);

// P^I_{n,k}: probability the channel is idle when k of n sensors decide busy.
Posterior posterior_idle(int group_size, int busy_count, const ScenarioParams& params);

// Single attacker with its own error rates; honest_busy of the N-1 honest
// sensors decide busy and the attacker's decision is attacker_report.
double log_likelihood_ratio_hetero(int honest_busy, int attacker_report, const HeteroParams& hparams);
Posterior posterior_idle_hetero(int honest_busy, int attacker_report, const HeteroParams& hparams);

double log_binomial_coefficient(int n, int k);
double binomial_pmf(int n, int k, double p);

// Pr(k of n sensors decide busy), unconditional over the channel state.
double report_count_pmf(int group_size, int busy_count, const ScenarioParams& params);

// The two halves of report_count_pmf: Pr(idle, k busy) and Pr(busy, k busy).
double joint_idle_count(int group_size, int busy_count, const ScenarioParams& params);
double joint_busy_count(int group_size, int busy_count, const ScenarioParams& params);

// Pr(K honest busy, Mbar attacker busy) with K from N-M honest and Mbar from M attackers.
double sensing_state_pmf(int honest_busy, int attacker_busy, const ScenarioParams& params);

}  // namespace csd
