#include "csd/fusion.hpp"

#include <cmath>
#include <stdexcept>

#include "csd/posterior.hpp"

namespace csd {

std::string_view to_string(Announcement a) { return a == Announcement::H0 ? "H0" : "H1"; }

std::string_view to_string(Region r) {
  switch (r) {
    case Region::I:
      return "I";
    case Region::II:
      return "II";
    case Region::III:
      return "III";
  }
  return "?";
}

Announcement fuse(int busy_report_count, int group_size, int threshold) {
  if (threshold < 1 || threshold > group_size) {
    throw std::invalid_argument("fusion threshold outside [1, n]");
  }
  if (busy_report_count < 0 || busy_report_count > group_size) {
    throw std::invalid_argument("busy report count outside [0, n]");
  }
  return busy_report_count >= threshold ? Announcement::H1 : Announcement::H0;
}

double log_prefactor(int group_size, const ScenarioParams& params) {
  return log_likelihood_ratio(group_size, 0, params);
}

double log_busy_step(const ScenarioParams& params) {
  const double pf = params.p_false_alarm;
  const double pm = params.p_missed_detection;
  return std::log(pf) + std::log(pm) - std::log1p(-pf) - std::log1p(-pm);
}

CpRegion condition_i_bounds(const ScenarioParams& params) {
  require_valid(params);
  const int n = params.n_total;
  const double log_rate = std::log(params.total_rate);
  CpRegion out;
  out.log_upper_bound = log_prefactor(n, params) - std::log(static_cast<double>(n)) + log_rate;
  out.log_lower_bound = out.log_upper_bound + log_busy_step(params);
  out.lower_bound = std::exp(out.log_lower_bound);
  out.upper_bound = std::exp(out.log_upper_bound);
  const double cp = params.collision_penalty;
  if (cp <= out.lower_bound) {
    out.region = Region::I;
    out.boundary = cp == out.lower_bound;
  } else if (cp < out.upper_bound) {
    out.region = Region::II;
  } else {
    out.region = Region::III;
    out.boundary = cp == out.upper_bound;
  }
  return out;
}

bool check_condition_i_semantics(const ScenarioParams& params) {
  const CpRegion region = condition_i_bounds(params);
  const ScenarioParams u = unit_rate(params);
  const int n = u.n_total;
  const Posterior idle = posterior_idle(n, 0, u);
  const Posterior one = posterior_idle(n, 1, u);
  const double after_idle = idle.p_idle / n - idle.p_busy * u.collision_penalty;
  const double after_busy = one.p_idle / n - one.p_busy * u.collision_penalty;
  const bool semantic = after_idle > 0.0 && after_busy < 0.0;
  return semantic == (region.region == Region::II);
}

}  // namespace csd
