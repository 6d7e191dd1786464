#include "csd/cli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csd/csv.hpp"
#include "csd/direct.hpp"
#include "csd/fusion.hpp"
#include "csd/indirect.hpp"
#include "csd/parallel.hpp"
#include "csd/posterior.hpp"
#include "csd/sim.hpp"
#include "csd/verify.hpp"
#include "json.hpp"

namespace csd {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Thrown with every problem found in the config; maps to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(std::vector<Violation> v) : std::runtime_error("invalid config"), violations(std::move(v)) {}
  std::vector<Violation> violations;
};

ConfigError config_error(const std::string& field, const std::string& message) {
  return ConfigError(std::vector<Violation>{{field, message}});
}

// Reads typed fields out of one JSON object and records every problem
// instead of stopping at the first.
class Reader {
 public:
  Reader(const json& obj, std::string path, std::vector<Violation>& errors)
      : obj_(obj), path_(std::move(path)), errors_(errors) {
    if (!obj_.is_object()) fail(path_, "must be an object");
  }

  // Rejects keys outside the allowed set.
  void allow(std::initializer_list<const char*> keys) {
    if (!obj_.is_object()) return;
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& item : obj_.items()) {
      if (!allowed.count(item.key())) fail(at(item.key()), "unknown key");
    }
  }

  bool has(const char* key) const { return obj_.is_object() && obj_.contains(key); }

  template <typename T>
  void get(const char* key, T& target) {
    if (!has(key)) return;
    const json& v = obj_.at(key);
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) return fail(at(key), "must be a boolean");
      target = v.get<bool>();
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) return fail(at(key), "must be an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned()) {
          target = v.get<T>();
        } else if (v.get<long long>() < 0) {
          fail(at(key), "must be non-negative");
        } else {
          target = static_cast<T>(v.get<long long>());
        }
      } else {
        const long long x = v.get<long long>();
        if (x < static_cast<long long>(std::numeric_limits<T>::min()) ||
            x > static_cast<long long>(std::numeric_limits<T>::max())) {
          return fail(at(key), "out of range");
        }
        target = static_cast<T>(x);
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) return fail(at(key), "must be a number");
      target = v.get<double>();
    } else {
      if (!v.is_string()) return fail(at(key), "must be a string");
      target = v.get<std::string>();
    }
  }

  std::vector<double> numbers(const char* key) {
    std::vector<double> out;
    if (!has(key)) return out;
    const json& v = obj_.at(key);
    if (!v.is_array() || v.empty()) {
      fail(at(key), "must be a non-empty array of numbers");
      return out;
    }
    for (const json& x : v) {
      if (!x.is_number()) {
        fail(at(key), "must be a non-empty array of numbers");
        return {};
      }
      out.push_back(x.get<double>());
    }
    return out;
  }

  std::vector<int> integers(const char* key) {
    std::vector<int> out;
    for (double x : numbers(key)) {
      if (x != std::floor(x) || std::fabs(x) > 1e9) {
        fail(at(key), "entries must be integers");
        return {};
      }
      out.push_back(static_cast<int>(x));
    }
    return out;
  }

  Reader child(const char* key) { return Reader(obj_.at(key), at(key), errors_); }
  const json& raw(const char* key) const { return obj_.at(key); }
  std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  void fail(const std::string& field, const std::string& message) { errors_.push_back({field, message}); }

 private:
  const json& obj_;
  std::string path_;
  std::vector<Violation>& errors_;
};

struct Scenario {
  ScenarioParams params;
  std::optional<HeteroParams> hetero;
};

std::vector<Violation> prefixed(std::vector<Violation> v, const std::string& prefix) {
  for (Violation& x : v) x.field = prefix + x.field;
  return v;
}

Scenario read_scenario(Reader r, std::vector<Violation>& errors) {
  r.allow({"n_total", "n_attackers", "p_idle", "p_false_alarm", "p_missed_detection", "collision_penalty",
           "direct_punishment", "discount", "total_rate", "attacker"});
  Scenario s;
  ScenarioParams& p = s.params;
  p.discount = 0.9;
  r.get("n_total", p.n_total);
  r.get("n_attackers", p.n_attackers);
  r.get("p_idle", p.p_idle);
  r.get("p_false_alarm", p.p_false_alarm);
  r.get("p_missed_detection", p.p_missed_detection);
  r.get("collision_penalty", p.collision_penalty);
  r.get("direct_punishment", p.direct_punishment);
  r.get("discount", p.discount);
  r.get("total_rate", p.total_rate);
  for (const char* key : {"n_total", "n_attackers", "p_idle", "p_false_alarm", "p_missed_detection"}) {
    if (!r.has(key)) r.fail(r.at(key), "required");
  }
  if (r.has("attacker")) {
    Reader a = r.child("attacker");
    a.allow({"p_false_alarm", "p_missed_detection", "rate", "rates_honest"});
    HeteroParams h;
    h.base = p;
    h.p_false_alarm_attacker = p.p_false_alarm;
    h.p_missed_detection_attacker = p.p_missed_detection;
    a.get("p_false_alarm", h.p_false_alarm_attacker);
    a.get("p_missed_detection", h.p_missed_detection_attacker);
    a.get("rate", h.rate_attacker);
    h.rates_honest = a.numbers("rates_honest");
    if (h.rates_honest.empty() && p.n_total >= 2) h.rates_honest.assign(p.n_total - 1, 1.0);
    s.hetero = h;
  }
  if (errors.empty()) {
    const auto v = s.hetero ? validate(*s.hetero) : validate(p);
    for (const Violation& x : prefixed(v, "scenario.")) errors.push_back(x);
  }
  return s;
}

struct Config {
  json doc;
  std::optional<Scenario> scenario;
  std::string output_directory = "csd_out";
};

Config load_config(const std::string& path, bool need_scenario) {
  std::ifstream in(path);
  if (!in) throw config_error("--config", "cannot open " + path);
  Config c;
  try {
    c.doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw config_error("--config", std::string("malformed JSON: ") + e.what());
  }
  std::vector<Violation> errors;
  Reader top(c.doc, "", errors);
  top.allow({"scenario", "analyze", "thresholds", "simulate", "verify", "output"});
  if (top.has("output")) {
    Reader o = top.child("output");
    o.allow({"directory"});
    o.get("directory", c.output_directory);
  }
  if (top.has("scenario")) {
    c.scenario = read_scenario(top.child("scenario"), errors);
  } else if (need_scenario) {
    errors.push_back({"scenario", "required"});
  }
  if (!errors.empty()) throw ConfigError(errors);
  return c;
}

// Command-line overrides shared by every subcommand.
struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
};

fs::path output_dir(const Config& c, const Common& o) {
  fs::path dir = o.out.empty() ? fs::path(c.output_directory) : fs::path(o.out);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json scenario_json(const ScenarioParams& p) {
  return {{"n_total", p.n_total},
          {"n_attackers", p.n_attackers},
          {"p_idle", p.p_idle},
          {"p_false_alarm", p.p_false_alarm},
          {"p_missed_detection", p.p_missed_detection},
          {"collision_penalty", p.collision_penalty},
          {"direct_punishment", p.direct_punishment},
          {"discount", p.discount},
          {"total_rate", p.total_rate}};
}

// ---- analyze ----

json analyze_report(const Scenario& s) {
  const ScenarioParams& p = s.params;
  const CpRegion r = condition_i_bounds(p);
  json posterior = json::array();
  for (int k = 0; k <= p.n_total; ++k) {
    const Posterior q = posterior_idle(p.n_total, k, p);
    posterior.push_back({{"busy_count", k},
                         {"p_idle", q.p_idle},
                         {"p_busy", q.p_busy},
                         {"log_likelihood_ratio", number(q.log_likelihood_ratio)},
                         {"probability", report_count_pmf(p.n_total, k, p)}});
  }
  const DirectThreshold d = direct_threshold(p.n_attackers, p);
  const LongTermRewards lr = lr_dishonest(p);
  json indirect = {{"lr_honest", number(lr.lr_honest)},
                   {"lr_dishonest", number(lr.lr_dishonest)},
                   {"z_star", lr.z_star ? json(*lr.z_star) : json(nullptr)},
                   {"attack_prevented", lr.attack_prevented},
                   {"delta_threshold", nullptr}};
  if (lr.transmission_case == TransmissionCase::NonAggressive) {
    const DeltaThreshold dt = delta_threshold(p);
    indirect["delta_threshold"] = {{"value", dt.value},
                                   {"complement", dt.complement},
                                   {"status", std::string(to_string(dt.status))},
                                   {"formula_case", std::string(to_string(dt.formula_case))}};
  }
  json doc = {{"schema_version", 1},
              {"scenario", scenario_json(p)},
              {"condition_i",
               {{"lower_bound", number(r.lower_bound)},
                {"upper_bound", number(r.upper_bound)},
                {"log_lower_bound", number(r.log_lower_bound)},
                {"log_upper_bound", number(r.log_upper_bound)},
                {"region", std::string(to_string(r.region))},
                {"boundary", r.boundary}}},
              {"a4", {{"satisfied", check_a4(p)}, {"bound", number(a4_bound(p))}}},
              {"transmission_case", std::string(to_string(classify_transmission_case(p)))},
              {"cooperation_case", std::string(to_string(classify_cooperation_case(p)))},
              {"posterior", posterior},
              {"direct_threshold",
               {{"value", number(d.value)}, {"binding_constraint", std::string(to_string(d.binding))}}},
              {"indirect", indirect}};
  if (s.hetero) {
    const HeteroThreshold h = direct_threshold_hetero(*s.hetero);
    doc["hetero_direct_threshold"] = {{"value", number(h.value)},
                                      {"th1", number(h.th1)},
                                      {"th2", number(h.th2)},
                                      {"th3", number(h.th3)},
                                      {"binding", h.binding}};
  }
  return doc;
}

int cmd_analyze(const Common& o, std::ostream& out) {
  Config c = load_config(o.config, true);
  std::vector<Violation> errors;
  std::optional<std::pair<int, int>> sweep;
  if (c.doc.contains("analyze")) {
    Reader r(c.doc.at("analyze"), "analyze", errors);
    r.allow({"n_min", "n_max"});
    if (r.has("n_min") || r.has("n_max")) {
      int lo = 2, hi = c.scenario->params.n_total;
      r.get("n_min", lo);
      r.get("n_max", hi);
      if (lo < 2 || hi < lo || hi > 1000) r.fail("analyze", "need 2 <= n_min <= n_max <= 1000");
      sweep = {lo, hi};
    }
  }
  if (!errors.empty()) throw ConfigError(errors);
  const fs::path dir = output_dir(c, o);
  const std::string report = analyze_report(*c.scenario).dump(2) + "\n";
  write_file(dir / "analyze.json", report);
  out << report;
  if (sweep) {
    std::ostringstream csv;
    CsvWriter w(csv, {"N", "lower", "upper"});
    for (int n = sweep->first; n <= sweep->second; ++n) {
      ScenarioParams p = c.scenario->params;
      p.n_total = n;
      p.n_attackers = 1;  // the bounds do not depend on M
      const CpRegion r = condition_i_bounds(p);
      w.cell(n).cell(r.lower_bound).cell(r.upper_bound);
      w.end_row();
    }
    write_file(dir / "condition_i_bounds.csv", csv.str());
  }
  return kExitOk;
}

// ---- thresholds ----

// Grid points evaluated concurrently and written in grid order.
template <typename Row, typename Eval>
std::vector<Row> evaluate_grid(size_t count, int workers, Eval eval) {
  std::vector<Row> rows(count);
  parallel_for(count, workers, [&](size_t i) { rows[i] = eval(i); });
  return rows;
}

std::vector<ScenarioParams> attacker_grid(const ScenarioParams& base, const std::vector<int>& ns,
                                          const std::vector<double>& priors, const std::vector<double>& penalties) {
  std::vector<ScenarioParams> out;
  for (int n : ns) {
    for (double pi : priors) {
      for (double cp : penalties) {
        for (int m = 1; m < n; ++m) {
          ScenarioParams p = base;
          p.n_total = n;
          p.n_attackers = m;
          p.p_idle = pi;
          p.collision_penalty = cp;
          out.push_back(p);
        }
      }
    }
  }
  return out;
}

void check_grid(const std::vector<ScenarioParams>& grid, const std::string& block, std::vector<Violation>& errors) {
  if (grid.empty()) errors.push_back({block, "grid is empty"});
  for (const ScenarioParams& p : grid) {
    const auto v = validate(p);
    if (!v.empty()) {
      for (const Violation& x : prefixed(v, block + ".")) errors.push_back(x);
      return;
    }
  }
}

struct DirectRow {
  ScenarioParams p;
  DirectThreshold d;
};

struct DeltaRow {
  ScenarioParams p;
  LongTermRewards lr;
  std::optional<DeltaThreshold> d;
};

struct HeteroRow {
  HeteroParams h;
  HeteroThreshold d;
};

void write_direct(const fs::path& path, const std::vector<DirectRow>& rows) {
  std::ostringstream csv;
  CsvWriter w(csv, {"N", "M", "P_I", "P_f", "P_m", "C_p", "threshold", "binding_constraint"});
  for (const DirectRow& r : rows) {
    w.cell(r.p.n_total).cell(r.p.n_attackers).cell(r.p.p_idle).cell(r.p.p_false_alarm);
    w.cell(r.p.p_missed_detection).cell(r.p.collision_penalty).cell(r.d.value);
    w.cell(std::string(to_string(r.d.binding)));
    w.end_row();
  }
  write_file(path, csv.str());
}

void write_delta(const fs::path& path, const std::vector<DeltaRow>& rows) {
  std::ostringstream csv;
  CsvWriter w(csv, {"N", "M", "P_I", "P_f", "P_m", "C_p", "case_nt_at", "case_wc_sc", "delta_threshold", "z_star",
                    "formula_case", "status"});
  for (const DeltaRow& r : rows) {
    w.cell(r.p.n_total).cell(r.p.n_attackers).cell(r.p.p_idle).cell(r.p.p_false_alarm);
    w.cell(r.p.p_missed_detection).cell(r.p.collision_penalty);
    w.cell(std::string(to_string(r.lr.transmission_case))).cell(std::string(to_string(r.lr.cooperation_case)));
    if (r.d) {
      w.cell(r.d->value);
    } else {
      w.cell(std::string("NA"));
    }
    w.cell(r.lr.z_star ? std::to_string(*r.lr.z_star) : std::string("NA"));
    if (r.d) {
      w.cell(std::string(to_string(r.d->formula_case))).cell(std::string(to_string(r.d->status)));
    } else {
      w.cell(std::string("NA")).cell(std::string("aggressive"));
    }
    w.end_row();
  }
  write_file(path, csv.str());
}

void write_hetero(const fs::path& path, const std::vector<HeteroRow>& rows) {
  std::ostringstream csv;
  CsvWriter w(csv, {"N", "M", "P_I", "P_f", "P_m", "C_p", "threshold", "binding_constraint", "P_fA", "P_mA", "r_A",
                    "th1", "th2", "th3"});
  for (const HeteroRow& r : rows) {
    const ScenarioParams& p = r.h.base;
    w.cell(p.n_total).cell(p.n_attackers).cell(p.p_idle).cell(p.p_false_alarm).cell(p.p_missed_detection);
    w.cell(p.collision_penalty).cell(r.d.value).cell("th" + std::to_string(r.d.binding));
    w.cell(r.h.p_false_alarm_attacker).cell(r.h.p_missed_detection_attacker).cell(r.h.rate_attacker);
    w.cell(r.d.th1).cell(r.d.th2).cell(r.d.th3);
    w.end_row();
  }
  write_file(path, csv.str());
}

int cmd_thresholds(const Common& o, std::ostream& out) {
  Config c = load_config(o.config, true);
  const ScenarioParams& base = c.scenario->params;
  std::vector<Violation> errors;
  if (!c.doc.contains("thresholds")) throw config_error("thresholds", "required for this command");
  Reader r(c.doc.at("thresholds"), "thresholds", errors);
  r.allow({"direct", "delta", "hetero"});
  if (!r.has("direct") && !r.has("delta") && !r.has("hetero")) {
    r.fail("thresholds", "request at least one of direct, delta, hetero");
  }
  auto axes = [&](Reader& b, std::vector<int>& ns, std::vector<double>& priors, std::vector<double>& penalties) {
    ns = b.has("n_values") ? b.integers("n_values") : std::vector<int>{base.n_total};
    priors = b.has("p_idle_values") ? b.numbers("p_idle_values") : std::vector<double>{base.p_idle};
    penalties = b.has("collision_penalty_values") ? b.numbers("collision_penalty_values")
                                                  : std::vector<double>{base.collision_penalty};
  };

  std::vector<ScenarioParams> direct_grid, delta_grid;
  std::vector<HeteroParams> hetero_grid;
  std::optional<CooperationCase> forced;
  if (r.has("direct")) {
    Reader b = r.child("direct");
    b.allow({"n_values", "p_idle_values", "collision_penalty_values"});
    std::vector<int> ns;
    std::vector<double> priors, penalties;
    axes(b, ns, priors, penalties);
    direct_grid = attacker_grid(base, ns, priors, penalties);
    check_grid(direct_grid, "thresholds.direct", errors);
  }
  if (r.has("delta")) {
    Reader b = r.child("delta");
    b.allow({"n_values", "p_idle_values", "collision_penalty_values", "formula"});
    std::vector<int> ns;
    std::vector<double> priors, penalties;
    axes(b, ns, priors, penalties);
    std::string formula = "auto";
    b.get("formula", formula);
    if (formula == "weak") {
      forced = CooperationCase::Weak;
    } else if (formula == "strong") {
      forced = CooperationCase::Strong;
    } else if (formula != "auto") {
      b.fail("thresholds.delta.formula", "one of auto, weak, strong");
    }
    delta_grid = attacker_grid(base, ns, priors, penalties);
    check_grid(delta_grid, "thresholds.delta", errors);
  }
  if (r.has("hetero")) {
    Reader b = r.child("hetero");
    b.allow({"p_false_alarm_attacker_values", "p_missed_detection_attacker_values", "rate_attacker"});
    HeteroParams h;
    if (c.scenario->hetero) {
      h = *c.scenario->hetero;
    } else {
      h.base = base;
      h.p_false_alarm_attacker = base.p_false_alarm;
      h.p_missed_detection_attacker = base.p_missed_detection;
      h.rates_honest.assign(std::max(0, base.n_total - 1), 1.0);
    }
    b.get("rate_attacker", h.rate_attacker);
    const auto pfa = b.has("p_false_alarm_attacker_values") ? b.numbers("p_false_alarm_attacker_values")
                                                            : std::vector<double>{h.p_false_alarm_attacker};
    const auto pma = b.has("p_missed_detection_attacker_values") ? b.numbers("p_missed_detection_attacker_values")
                                                                 : std::vector<double>{h.p_missed_detection_attacker};
    for (double x : pfa) {
      for (double y : pma) {
        HeteroParams g = h;
        g.p_false_alarm_attacker = x;
        g.p_missed_detection_attacker = y;
        hetero_grid.push_back(g);
      }
    }
    if (hetero_grid.empty()) errors.push_back({"thresholds.hetero", "grid is empty"});
    for (const HeteroParams& g : hetero_grid) {
      const auto v = validate(g);
      if (!v.empty()) {
        for (const Violation& x : prefixed(v, "thresholds.hetero.")) errors.push_back(x);
        break;
      }
    }
  }
  if (!errors.empty()) throw ConfigError(errors);

  const int workers = o.workers.value_or(default_workers());
  const fs::path dir = output_dir(c, o);
  json written = json::array();
  if (!direct_grid.empty()) {
    const auto rows = evaluate_grid<DirectRow>(direct_grid.size(), workers, [&](size_t i) {
      return DirectRow{direct_grid[i], direct_threshold(direct_grid[i].n_attackers, direct_grid[i])};
    });
    write_direct(dir / "direct_threshold.csv", rows);
    written.push_back({{"file", "direct_threshold.csv"}, {"rows", rows.size()}});
  }
  if (!delta_grid.empty()) {
    const auto rows = evaluate_grid<DeltaRow>(delta_grid.size(), workers, [&](size_t i) {
      const ScenarioParams& p = delta_grid[i];
      DeltaRow row{p, lr_dishonest(p), std::nullopt};
      if (forced) {
        row.d = delta_threshold_formula(p, *forced);
      } else if (row.lr.transmission_case == TransmissionCase::NonAggressive) {
        row.d = delta_threshold(p);
      }
      return row;
    });
    write_delta(dir / "delta_threshold.csv", rows);
    written.push_back({{"file", "delta_threshold.csv"}, {"rows", rows.size()}});
  }
  if (!hetero_grid.empty()) {
    const auto rows = evaluate_grid<HeteroRow>(hetero_grid.size(), workers, [&](size_t i) {
      return HeteroRow{hetero_grid[i], direct_threshold_hetero(hetero_grid[i])};
    });
    write_hetero(dir / "hetero_threshold.csv", rows);
    written.push_back({{"file", "hetero_threshold.csv"}, {"rows", rows.size()}});
  }
  out << json({{"schema_version", 1}, {"directory", dir.string()}, {"outputs", written}}).dump(2) << "\n";
  return kExitOk;
}

// ---- simulate ----

int cmd_simulate(const Common& o, std::ostream& out) {
  Config c = load_config(o.config, true);
  std::vector<Violation> errors;
  SimConfig s;
  s.params = c.scenario->params;
  s.hetero = c.scenario->hetero;
  if (c.doc.contains("simulate")) {
    Reader r(c.doc.at("simulate"), "simulate", errors);
    r.allow({"mode", "policy", "horizon", "replications", "seed", "trace_slots", "pu_rate", "pu_value_slope",
             "fixed_table"});
    std::string mode = "none", policy = "optimal";
    r.get("mode", mode);
    r.get("policy", policy);
    if (auto m = parse_punishment_mode(mode)) {
      s.mode = *m;
    } else {
      r.fail("simulate.mode", "one of none, direct, indirect");
    }
    if (auto k = parse_attacker_policy(policy)) {
      s.policy = *k;
    } else {
      r.fail("simulate.policy", "one of optimal, honest, fixed");
    }
    r.get("horizon", s.horizon);
    r.get("replications", s.replications);
    r.get("seed", s.base_seed);
    r.get("trace_slots", s.trace_slots);
    r.get("pu_rate", s.pu_rate);
    r.get("pu_value_slope", s.pu_value_slope);
    if (r.has("fixed_table")) {
      const json& t = r.raw("fixed_table");
      bool ok = t.is_array();
      for (const json& row : ok ? t : json::array()) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number_integer() || !row[1].is_number_integer()) {
          ok = false;
          break;
        }
        s.fixed_table.push_back({row[0].get<int>(), row[1].get<int>()});
      }
      if (!ok) r.fail("simulate.fixed_table", "array of [busy_reports, transmitters] pairs");
    }
  }
  if (o.seed) s.base_seed = *o.seed;
  s.workers = o.workers.value_or(default_workers());
  if (errors.empty()) {
    for (const Violation& v : prefixed(validate(s), "simulate.")) errors.push_back(v);
  }
  if (!errors.empty()) throw ConfigError(errors);

  const SimResult result = run_experiment(s);
  const fs::path dir = output_dir(c, o);
  const std::string doc = stats_json(s, result.stats);
  write_file(dir / "stats.json", doc);
  if (s.trace_slots > 0) {
    std::ofstream f(dir / "trace.csv");
    write_trace_csv(f, result.trace);
  }
  out << doc;
  return kExitOk;
}

// ---- verify ----

int cmd_verify(const Common& o, const std::optional<double>& perturb, std::ostream& out) {
  Config c = load_config(o.config, false);
  std::vector<Violation> errors;
  VerifyOptions v;
  std::vector<std::string> only;
  if (c.doc.contains("verify")) {
    Reader r(c.doc.at("verify"), "verify", errors);
    r.allow({"grid_points_per_axis", "max_group_size", "best_response_instances", "direct_instances", "mdp_instances",
             "delta_instances", "sim_instances", "sim_slots", "sim_replications", "sim_episodes",
             "sim_pass_fraction", "seed", "enforce_time_limits", "perturb_direct_threshold", "checks"});
    r.get("grid_points_per_axis", v.grid_points_per_axis);
    r.get("max_group_size", v.max_group_size);
    r.get("best_response_instances", v.best_response_instances);
    r.get("direct_instances", v.direct_instances);
    r.get("mdp_instances", v.mdp_instances);
    r.get("delta_instances", v.delta_instances);
    r.get("sim_instances", v.sim_instances);
    r.get("sim_slots", v.sim_slots);
    r.get("sim_replications", v.sim_replications);
    r.get("sim_episodes", v.sim_episodes);
    r.get("sim_pass_fraction", v.sim_pass_fraction);
    r.get("seed", v.seed);
    r.get("enforce_time_limits", v.enforce_time_limits);
    r.get("perturb_direct_threshold", v.perturb_direct_threshold);
    if (r.has("checks")) {
      const json& list = r.raw("checks");
      bool ok = list.is_array();
      for (const json& name : ok ? list : json::array()) {
        if (!name.is_string()) {
          ok = false;
          break;
        }
        only.push_back(name.get<std::string>());
      }
      if (!ok) r.fail("verify.checks", "array of check names");
    }
  }
  if (o.seed) v.seed = *o.seed;
  if (perturb) v.perturb_direct_threshold = *perturb;
  v.workers = o.workers.value_or(default_workers());
  for (const Violation& x : prefixed(validate(v), "verify.")) errors.push_back(x);
  for (const std::string& name : only) {
    if (std::find(check_names().begin(), check_names().end(), name) == check_names().end()) {
      errors.push_back({"verify.checks", "unknown check " + name});
    }
  }
  if (!errors.empty()) throw ConfigError(errors);

  const std::vector<CheckResult> results = run_checks(v, only);
  const fs::path dir = output_dir(c, o);
  write_file(dir / "verify.json", results_json(results));
  bool all = true;
  for (const CheckResult& r : results) {
    all = all && r.passed;
    out << "[" << (r.passed ? "PASS" : "FAIL") << "] " << r.id << " " << r.name << ": " << r.detail << "\n";
  }
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Collaborative spectrum sensing attack analysis and simulation", "csd"};
  app.require_subcommand(1);
  Common common;
  std::optional<double> perturb;
  std::string command;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "JSON config file")->required();
    sub->add_option("--out", common.out, "output directory (overrides output.directory)");
    sub->add_option("--seed", common.seed, "base seed");
    sub->add_option("--workers", common.workers, "worker threads (default CSD_WORKERS or hardware)")
        ->check(CLI::Range(1, 4096));
    sub->callback([&command, sub] { command = sub->get_name(); });
  };
  add_common(app.add_subcommand("analyze", "Condition I bounds, regime cases and posterior table"));
  add_common(app.add_subcommand("thresholds", "direct and discount threshold sweeps as CSV"));
  add_common(app.add_subcommand("simulate", "Monte Carlo simulation with stats JSON"));
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance checks");
  add_common(verify);
  verify->add_option("--perturb-direct-threshold", perturb, "scale the closed-form direct threshold (negative control)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (command == "analyze") return cmd_analyze(common, out);
    if (command == "thresholds") return cmd_thresholds(common, out);
    if (command == "simulate") return cmd_simulate(common, out);
    return cmd_verify(common, perturb, out);
  } catch (const ConfigError& e) {
    err << "csd: invalid configuration\n";
    for (const Violation& v : e.violations) err << "  " << v.field << ": " << v.message << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "csd: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace csd
