#include "csd/posterior.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace csd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// count * log(x) with 0 * log(0) = 0.
double xlog(int count, double x) {
  if (count == 0) return 0.0;
  return static_cast<double>(count) * std::log(x);
}

// count * log(1 - x) with 0 * log(0) = 0.
double xlog1m(int count, double x) {
  if (count == 0) return 0.0;
  return static_cast<double>(count) * std::log1p(-x);
}

// count * ln(num/den) where either side may be zero.
double xlog_ratio(int count, double num, double den) {
  if (count == 0) return 0.0;
  if (num == 0.0 && den == 0.0) {
    throw std::domain_error("likelihood ratio 0/0");
  }
  if (num == 0.0) return -kInf;
  if (den == 0.0) return kInf;
  return static_cast<double>(count) * (std::log(num) - std::log(den));
}

void check_counts(int n, int k) {
  if (n < 1) throw std::invalid_argument("group_size must be >= 1");
  if (k < 0 || k > n) {
    throw std::invalid_argument("busy_count " + std::to_string(k) + " outside [0, " +
                                std::to_string(n) + "]");
  }
}

// C(n,k) p^k (1-p)^(n-k) with q = 1-p passed separately so neither side
// loses precision when it is tiny.
double binomial_pq(int n, int k, double p, double q) {
  if (k < 0 || k > n) return 0.0;
  const double lp = k == 0 ? 0.0 : (p == 0.0 ? -kInf : k * std::log(p));
  const double lq = n - k == 0 ? 0.0 : (q == 0.0 ? -kInf : (n - k) * std::log(q));
  return std::exp(log_binomial_coefficient(n, k) + lp + lq);
}

double sum_logs(double a, double b) {
  if ((a == kInf && b == -kInf) || (a == -kInf && b == kInf)) {
    throw std::domain_error("indeterminate likelihood ratio");
  }
  return a + b;
}

}  // namespace

Posterior posterior_from_log_ratio(double log_ratio) {
  if (std::isnan(log_ratio)) throw std::domain_error("likelihood ratio is NaN");
  Posterior out;
  out.log_likelihood_ratio = log_ratio;
  if (log_ratio >= 0.0) {
    const double e = std::exp(-log_ratio);
    out.p_busy = e / (1.0 + e);
    out.p_idle = 1.0 - out.p_busy;
  } else {
    const double e = std::exp(log_ratio);
    out.p_idle = e / (1.0 + e);
    out.p_busy = 1.0 - out.p_idle;
  }
  return out;
}

double log_likelihood_ratio(int group_size, int busy_count, const ScenarioParams& params) {
  check_counts(group_size, busy_count);
  const double pf = params.p_false_alarm;
  const double pm = params.p_missed_detection;
  double l = std::log(params.p_idle) - std::log1p(-params.p_idle);
  l = sum_logs(l, xlog_ratio(group_size - busy_count, 1.0 - pf, pm));
  l = sum_logs(l, xlog_ratio(busy_count, pf, 1.0 - pm));
  return l;
}

Posterior posterior_idle(int group_size, int busy_count, const ScenarioParams& params) {
  return posterior_from_log_ratio(log_likelihood_ratio(group_size, busy_count, params));
}

double log_likelihood_ratio_hetero(int honest_busy, int attacker_report, const HeteroParams& h) {
  const int honest = h.base.n_total - 1;
  if (honest_busy < 0 || honest_busy > honest) {
    throw std::invalid_argument("honest_busy outside [0, N-1]");
  }
  if (attacker_report != 0 && attacker_report != 1) {
    throw std::invalid_argument("attacker_report must be 0 or 1");
  }
  double l = log_likelihood_ratio(honest, honest_busy, h.base);
  if (attacker_report == 0) {
    l = sum_logs(l, xlog_ratio(1, 1.0 - h.p_false_alarm_attacker, h.p_missed_detection_attacker));
  } else {
    l = sum_logs(l, xlog_ratio(1, h.p_false_alarm_attacker, 1.0 - h.p_missed_detection_attacker));
  }
  return l;
}

Posterior posterior_idle_hetero(int honest_busy, int attacker_report, const HeteroParams& h) {
  return posterior_from_log_ratio(log_likelihood_ratio_hetero(honest_busy, attacker_report, h));
}

double log_binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("binomial index outside [0, n]");
  if (n <= 60) {
    const int kk = k < n - k ? k : n - k;
    std::uint64_t c = 1;
    // c stays an exact integer: c * (n - kk + i) / i is C(n - kk + i, i).
    for (int i = 1; i <= kk; ++i) {
      c = c * static_cast<std::uint64_t>(n - kk + i) / static_cast<std::uint64_t>(i);
    }
    return std::log(static_cast<double>(c));
  }
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial_pmf(int n, int k, double p) {
  if (k < 0 || k > n) return 0.0;
  if (p == 0.0) return k == 0 ? 1.0 : 0.0;
  if (p == 1.0) return k == n ? 1.0 : 0.0;
  return std::exp(log_binomial_coefficient(n, k) + xlog(k, p) + xlog1m(n - k, p));
}

double joint_idle_count(int group_size, int busy_count, const ScenarioParams& params) {
  check_counts(group_size, busy_count);
  const double pf = params.p_false_alarm;
  return params.p_idle * binomial_pq(group_size, busy_count, pf, 1.0 - pf);
}

double joint_busy_count(int group_size, int busy_count, const ScenarioParams& params) {
  check_counts(group_size, busy_count);
  const double pm = params.p_missed_detection;
  return (1.0 - params.p_idle) * binomial_pq(group_size, busy_count, 1.0 - pm, pm);
}

double report_count_pmf(int group_size, int busy_count, const ScenarioParams& params) {
  return joint_idle_count(group_size, busy_count, params) +
         joint_busy_count(group_size, busy_count, params);
}

double sensing_state_pmf(int honest_busy, int attacker_busy, const ScenarioParams& params) {
  const int honest = params.n_honest();
  const int m = params.n_attackers;
  if (honest_busy < 0 || honest_busy > honest || attacker_busy < 0 || attacker_busy > m) {
    throw std::invalid_argument("sensing state outside its range");
  }
  const double pf = params.p_false_alarm;
  const double pm = params.p_missed_detection;
  return params.p_idle * binomial_pq(honest, honest_busy, pf, 1.0 - pf) *
             binomial_pq(m, attacker_busy, pf, 1.0 - pf) +
         (1.0 - params.p_idle) * binomial_pq(honest, honest_busy, 1.0 - pm, pm) *
             binomial_pq(m, attacker_busy, 1.0 - pm, pm);
}

}  // namespace csd
