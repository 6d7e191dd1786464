#pragma once

#include <cmath>
#include <random>

#include "csd/model.hpp"
#include "oracle/exact_rational.hpp"

namespace testing_support {

inline csd::ScenarioParams params(int n, int m, double pi, double pf, double pm, double cp = 0.0,
                                  double cb = 0.0, double delta = 0.9) {
  csd::ScenarioParams p;
  p.n_total = n;
  p.n_attackers = m;
  p.p_idle = pi;
  p.p_false_alarm = pf;
  p.p_missed_detection = pm;
  p.collision_penalty = cp;
  p.direct_punishment = cb;
  p.discount = delta;
  return p;
}

inline oracle::Params exact(int n, int m, const char* pi, const char* pf, const char* pm,
                            const char* cp = "0", const char* delta = "0.9") {
  oracle::Params p;
  p.n = n;
  p.m = m;
  p.pi = oracle::dec(pi);
  p.pf = oracle::dec(pf);
  p.pm = oracle::dec(pm);
  p.cp = oracle::dec(cp);
  p.cb = 0;
  p.delta = oracle::dec(delta);
  return p;
}

// Exact rational copy of double-valued params; doubles are dyadic rationals.
inline oracle::Params exact_of(const csd::ScenarioParams& s) {
  oracle::Params p;
  p.n = s.n_total;
  p.m = s.n_attackers;
  p.pi = oracle::Q(s.p_idle);
  p.pf = oracle::Q(s.p_false_alarm);
  p.pm = oracle::Q(s.p_missed_detection);
  p.cp = oracle::Q(s.collision_penalty);
  p.cb = oracle::Q(s.direct_punishment);
  p.delta = oracle::Q(s.discount);
  return p;
}

inline double rel_err(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

}  // namespace testing_support
