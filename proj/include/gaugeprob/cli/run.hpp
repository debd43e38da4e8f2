#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaugeprob/cli/log.hpp"
#include "gaugeprob/cli/prob_json.hpp"
#include "gaugeprob/cli/report.hpp"
#include "gaugeprob/cli/scenario.hpp"
#include "gaugeprob/derivative.hpp"
#include "gaugeprob/error.hpp"
#include "gaugeprob/fubini.hpp"
#include "gaugeprob/quadrature.hpp"
#include "gaugeprob/sampling.hpp"
#include "gaugeprob/stochastic.hpp"
#include "gaugeprob/uniqueness.hpp"

namespace gaugeprob::cli {

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {
      "integrate", "integrate-prob", "riemann-prob", "uniqueness",
      "fubini",    "derivative",     "ftc",          "convergence-table"};
  return names;
}

struct RunConfig {
  std::string command;
  std::optional<std::string> scenario;  // path
  std::optional<std::string> catalog;   // id
  std::optional<std::string> output;    // path; stdout when empty
  std::string format = "json";
  std::uint64_t seed = 0;
  std::optional<double> eps, eta, tol;
  std::optional<int> levels;
};

struct RunOutcome {
  int exit_code = 1;
  std::string status;
  std::string report;
  std::string error;  // one-line message for stderr when status is "error"
};

// 0 for verified/pass/converged/exploratory, 2 for a completed computation
// whose claim was not met, 1 for errors.
inline int exit_code_for(const std::string& status) {
  if (status == "verified" || status == "pass" || status == "converged" ||
      status == "exploratory")
    return 0;
  if (status == "error") return 1;
  return 2;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace detail {

struct Parameters {
  double eps;
  double eta;
  double tol;
  int levels;
};

struct CommandResult {
  std::string status;
  OrderedJson result;
  Table table;
};

inline double positive(const char* name, std::optional<double> cli, std::optional<double> file,
                       double fallback) {
  const double v = cli ? *cli : file ? *file : fallback;
  if (!(v > 0.0) || !std::isfinite(v))
    throw InvalidArgument(std::string(name) + " must be finite and positive");
  return v;
}

inline Parameters resolve(const RunConfig& cfg, const Scenario& s) {
  const RandomEntry* r = s.random ? &*s.random : nullptr;
  Parameters p{};
  p.eps = positive("eps", cfg.eps, s.eps, r ? r->eps : 1e-3);
  p.eta = positive("eta", cfg.eta, s.eta, r ? r->eta : 1e-2);
  p.tol = positive("tol", cfg.tol, s.tol, r ? r->tol : 1e-9);
  p.levels = cfg.levels ? *cfg.levels : s.levels ? *s.levels : 40;
  if (p.levels < 1) throw InvalidArgument("levels must be >= 1");
  return p;
}

inline const ScalarProblem& need_scalar(const Scenario& s, const std::string& command) {
  if (!s.scalar) throw ScenarioError("/integrand", command + " needs a scalar integrand");
  return *s.scalar;
}

inline const RandomEntry& need_random(const Scenario& s, const std::string& command) {
  if (!s.random) throw ScenarioError("/function", command + " needs a random function");
  return *s.random;
}

inline const RandomFunction& need_antiderivative(const RandomEntry& e, const std::string& command) {
  if (!e.antiderivative)
    throw ScenarioError("/antiderivative", command + " needs an antiderivative");
  return *e.antiderivative;
}

inline StochasticOptions stochastic_options(const Parameters& p, std::uint64_t seed) {
  StochasticOptions o;
  o.max_levels = p.levels;
  o.seed = seed;
  return o;
}

inline GaugeFamily random_family(const Scenario& s, const Parameters& p) {
  const auto& e = *s.random;
  return select_family(s.gauge, e.function.shared_family(e.domain, p.tol), e.domain);
}

inline CommandResult not_converged(const NonConvergence& e) {
  CommandResult c;
  c.status = "not-converged";
  c.result["failure"] = e.what();
  c.result["outcomes"] = e.which();
  c.table = {{"outcome"}, {}};
  for (auto w : e.which()) c.table.rows.push_back({static_cast<std::int64_t>(w)});
  return c;
}

inline CommandResult cmd_integrate(const Scenario& s, const Parameters& p) {
  const auto& sp = need_scalar(s, "integrate");
  QuadratureOptions q;
  q.tol = p.tol;
  q.max_levels = p.levels;
  const auto r = kh_integrate(sp.fn, sp.domain, q,
                              select_family(s.gauge, sp.family(sp.domain, p.tol), sp.domain));
  CommandResult c;
  c.status = r.converged ? "converged" : "not-converged";
  c.result["integrand"] = sp.id;
  c.result["domain"] = {sp.domain.lower(), sp.domain.upper()};
  c.result["gauge"] = s.gauge.name;
  c.result["exact"] = real(sp.exact);
  c.result["abs_error"] = sp.exact ? real(std::abs(r.value - *sp.exact)) : OrderedJson();
  c.result.update(quadrature_to_json(r));
  c.table = {{"value", "refinement_levels", "final_mesh_bound", "converged"},
             {{r.value, std::int64_t{r.refinement_levels}, r.final_mesh_bound, r.converged}}};
  return c;
}

inline CommandResult cmd_integrate_prob(const Scenario& s, const Parameters& p,
                                        std::uint64_t seed, bool riemann) {
  const auto& e = need_random(s, riemann ? "riemann-prob" : "integrate-prob");
  const auto opts = stochastic_options(p, seed);
  try {
    const auto r = riemann
        ? integrate_riemann_in_probability(e.function, e.domain, p.eps, p.eta, p.tol, opts)
        : integrate_pathwise(e.function, e.domain, p.eps, p.eta, p.tol, random_family(s, p), opts);
    CommandResult c;
    c.status = r.verified ? "verified" : "unverified";
    c.result["function"] = e.id;
    c.result["domain"] = {e.domain.lower(), e.domain.upper()};
    c.result["gauge"] = riemann ? std::string("uniform") : s.gauge.name;
    c.result.update(stochastic_to_json(r));
    c.table = integral_table(r.integral);
    return c;
  } catch (const NonConvergence& nc) {
    return not_converged(nc);
  }
}

inline CommandResult cmd_uniqueness(const Scenario& s, const Parameters& p, std::uint64_t seed) {
  const auto& e = need_random(s, "uniqueness");
  const auto rep = verify_uniqueness(e.function, e.domain,
                                     shipped_strategies(e.function, e.domain, p.tol), p.eps,
                                     p.eta, p.tol, stochastic_options(p, seed));
  CommandResult c;
  c.status = !rep.conclusive ? "inconclusive" : rep.almost_surely_equal ? "pass" : "fail";
  c.result["function"] = e.id;
  c.result["conclusive"] = rep.conclusive;
  c.result["almost_surely_equal"] = rep.almost_surely_equal;
  c.result["equality_tolerance"] = real(rep.equality_tolerance);
  c.result["max_abs_difference"] = real(rep.max_abs_difference);
  OrderedJson strategies = OrderedJson::array();
  for (const auto& st : rep.strategies) {
    OrderedJson j;
    j["name"] = st.name;
    j["verified"] = st.verified();
    if (st.result) j["result"] = stochastic_to_json(*st.result);
    if (!st.failure.empty()) j["failure"] = st.failure;
    strategies.push_back(std::move(j));
  }
  c.result["strategies"] = std::move(strategies);
  OrderedJson grid = OrderedJson::array();
  c.table = {{"eps", "deviation_probability"}, {}};
  for (const auto& d : rep.deviation_grid) {
    grid.push_back({{"eps", real(d.eps)}, {"deviation_probability", real(d.probability)}});
    c.table.rows.push_back({d.eps, d.probability});
  }
  c.result["deviation_grid"] = std::move(grid);
  return c;
}

inline CommandResult cmd_fubini(const Scenario& s, const Parameters& p, std::uint64_t seed) {
  const auto& e = need_random(s, "fubini");
  if (!e.dominator) throw ScenarioError("/dominator", "fubini needs a dominating variable");
  FubiniOptions fo;
  fo.eps = p.eps;
  fo.eta = p.eta;
  fo.integration = stochastic_options(p, seed);
  CommandResult c;
  try {
    const auto rep = fubini_check(e.function, e.domain, *e.dominator, p.tol,
                                  random_family(s, p), fo);
    c.status = rep.pass && rep.bound_holds ? "pass" : "fail";
    c.result["function"] = e.id;
    c.result["lhs"] = real(rep.lhs);
    c.result["rhs"] = real(rep.rhs);
    c.result["difference"] = real(rep.difference);
    c.result["threshold"] = real(rep.threshold);
    c.result["pass"] = rep.pass;
    c.result["bound_holds"] = rep.bound_holds;
    c.result["hypothesis_points"] = rep.hypothesis_points;
    c.result["dominator"] = variable_to_json(*e.dominator);
    OrderedJson lhs = quadrature_to_json(rep.lhs_quadrature);
    lhs.erase("trace");
    c.result["lhs_quadrature"] = std::move(lhs);
    c.result["pathwise"] = stochastic_to_json(*rep.pathwise);
    c.table = {{"lhs", "rhs", "difference", "threshold", "pass", "bound_holds"},
               {{rep.lhs, rep.rhs, rep.difference, rep.threshold, rep.pass, rep.bound_holds}}};
  } catch (const HypothesisViolation& v) {
    c.status = "hypothesis-violation";
    c.result["function"] = e.id;
    c.result["message"] = v.what();
    c.result["t"] = real(v.t());
    c.result["outcomes"] = v.outcomes();
    OrderedJson labels = OrderedJson::array();
    c.table = {{"t", "outcome", "label"}, {}};
    for (auto w : v.outcomes()) {
      labels.push_back(e.function.space()->labels()[w]);
      c.table.rows.push_back({v.t(), static_cast<std::int64_t>(w),
                              e.function.space()->labels()[w]});
    }
    c.result["labels"] = std::move(labels);
  } catch (const NonConvergence& nc) {
    return not_converged(nc);
  }
  return c;
}

inline OrderedJson derivative_to_json(const DerivativeReport& d) {
  OrderedJson rows = OrderedJson::array();
  for (const auto& r : d.rows) rows.push_back({{"t", real(r.t)}, {"tail", real(r.tail)}});
  return {{"t0", real(d.t0)},     {"eps", real(d.eps)},
          {"eta", real(d.eta)},   {"pass", d.pass},
          {"worst_tail", real(d.worst_tail)}, {"worst_t", real(d.worst_t)},
          {"rows", std::move(rows)}};
}

inline void append_derivative_rows(Table& t, const DerivativeReport& d) {
  for (const auto& r : d.rows) t.rows.push_back({d.t0, r.t, r.tail, d.eps, d.eta});
}

inline CommandResult cmd_derivative(const Scenario& s, const Parameters& p) {
  const auto& e = need_random(s, "derivative");
  const auto& F = need_antiderivative(e, "derivative");
  const std::vector<double> points = s.t0 ? std::vector<double>{*s.t0} : interior_points(e.domain, 10);
  CommandResult c;
  c.table = {{"t0", "t", "tail", "eps", "eta"}, {}};
  OrderedJson checks = OrderedJson::array();
  bool pass = true;
  for (double t0 : points) {
    const auto d = derivative_in_probability_at(F, e.function, e.domain, t0, p.eps, p.eta,
                                                s.derivative_grid);
    pass &= d.pass;
    checks.push_back(derivative_to_json(d));
    append_derivative_rows(c.table, d);
  }
  c.status = pass ? "pass" : "fail";
  c.result["function"] = e.id;
  c.result["radius"] = real(s.derivative_grid.radius);
  c.result["grid_points"] = s.derivative_grid.points;
  c.result["pass"] = pass;
  c.result["checks"] = std::move(checks);
  return c;
}

inline CommandResult cmd_ftc(const Scenario& s, const Parameters& p, std::uint64_t seed) {
  const auto& e = need_random(s, "ftc");
  const auto& F = need_antiderivative(e, "ftc");
  FtcOptions fo;
  fo.grid = s.derivative_grid;
  fo.integration = stochastic_options(p, seed);
  const auto rep = ftc_experiment(F, e.function, e.domain, p.eps, p.eta, p.tol, fo);
  CommandResult c;
  c.status = "exploratory";
  c.result["function"] = e.id;
  c.result["label"] = "EXPLORATORY";
  c.result["derivative_precondition"] = rep.derivative_precondition;
  OrderedJson checks = OrderedJson::array();
  for (const auto& d : rep.derivative_checks) checks.push_back(derivative_to_json(d));
  c.result["derivative_checks"] = std::move(checks);
  c.result["increment"] = variable_to_json(*rep.increment);
  if (rep.integral) c.result["integral"] = stochastic_to_json(*rep.integral);
  if (!rep.integration_failure.empty()) c.result["integration_failure"] = rep.integration_failure;
  c.result["almost_surely_equal"] = rep.almost_surely_equal;
  c.result["equality_tolerance"] = real(rep.equality_tolerance);
  c.result["max_abs_difference"] = real(rep.max_abs_difference);
  OrderedJson grid = OrderedJson::array();
  c.table = {{"eps", "deviation_probability"}, {}};
  for (const auto& d : rep.deviation_grid) {
    grid.push_back({{"eps", real(d.eps)}, {"deviation_probability", real(d.probability)}});
    c.table.rows.push_back({d.eps, d.probability});
  }
  c.result["deviation_grid"] = std::move(grid);
  return c;
}

inline CommandResult cmd_convergence_table(const Scenario& s, const Parameters& p,
                                           std::uint64_t seed) {
  CommandResult c;
  c.table = {{"level", "mesh_bound", "value", "eps", "eta"}, {}};
  OrderedJson rows = OrderedJson::array();
  if (s.scalar) {
    const auto& sp = *s.scalar;
    QuadratureOptions q;
    q.tol = p.tol;
    q.max_levels = p.levels;
    const auto r = kh_integrate(sp.fn, sp.domain, q,
                                select_family(s.gauge, sp.family(sp.domain, p.tol), sp.domain));
    c.status = r.converged ? "converged" : "not-converged";
    c.result["mode"] = "scalar";
    c.result["integrand"] = sp.id;
    for (const auto& t : r.trace) {
      rows.push_back({{"level", t.level},
                      {"pieces", t.pieces},
                      {"mesh_bound", real(t.mesh)},
                      {"value", real(t.sum)},
                      {"eps", nullptr},
                      {"eta", nullptr}});
      c.table.rows.push_back({std::int64_t{t.level}, t.mesh, t.sum, std::monostate{},
                              std::monostate{}});
    }
    c.result["rows"] = std::move(rows);
    return c;
  }

  const auto& e = need_random(s, "convergence-table");
  const GaugeFamily family = random_family(s, p);
  try {
    const auto r = integrate_pathwise(e.function, e.domain, p.eps, p.eta, p.tol, family,
                                      stochastic_options(p, seed));
    c.status = r.verified ? "verified" : "unverified";
    c.result["mode"] = "random";
    c.result["function"] = e.id;
    c.result["integral"] = variable_to_json(r.integral);
    for (const auto& t : tail_profile(e.function, r.integral, e.domain, family,
                                      r.verification_level + 1, {{p.eps, p.eta}})) {
      rows.push_back({{"level", t.level},
                      {"pieces", t.pieces},
                      {"mesh_bound", real(t.mesh)},
                      {"value", real(t.tail)},
                      {"eps", real(t.eps)},
                      {"eta", real(t.eta)}});
      c.table.rows.push_back({std::int64_t{t.level}, t.mesh, t.tail, t.eps, t.eta});
    }
    c.result["rows"] = std::move(rows);
    return c;
  } catch (const NonConvergence& nc) {
    return not_converged(nc);
  }
}

inline OrderedJson error_to_json(const std::exception& e) {
  OrderedJson j;
  std::string type = "error";
  if (dynamic_cast<const ScenarioError*>(&e)) type = "scenario";
  else if (dynamic_cast<const CatalogMiss*>(&e)) type = "catalog-miss";
  else if (dynamic_cast<const InvalidArgument*>(&e)) type = "invalid-argument";
  else if (dynamic_cast<const EvaluationError*>(&e)) type = "evaluation";
  else if (dynamic_cast<const PartitionLimitExceeded*>(&e)) type = "partition-limit";
  else if (dynamic_cast<const InvalidGauge*>(&e)) type = "invalid-gauge";
  j["type"] = type;
  j["message"] = e.what();
  if (const auto* s = dynamic_cast<const ScenarioError*>(&e)) j["field"] = s->field();
  if (const auto* m = dynamic_cast<const CatalogMiss*>(&e)) j["id"] = m->id();
  if (const auto* v = dynamic_cast<const EvaluationError*>(&e)) {
    j["t"] = real(v->t());
    if (v->outcome() != EvaluationError::kNoOutcome) j["outcome"] = v->outcome();
  }
  return j;
}

}  // namespace detail

// Runs one command and renders its report; performs no output itself.
// `generated_at` is the only field that differs between identical runs.
inline RunOutcome execute(const RunConfig& cfg, const std::string& generated_at = utc_timestamp()) {
  OrderedJson report;
  report["schema"] = kReportSchema;
  report["command"] = cfg.command;
  OrderedJson source;
  if (cfg.catalog) source = {{"kind", "catalog"}, {"id", *cfg.catalog}};
  if (cfg.scenario) source = {{"kind", "scenario"}, {"path", *cfg.scenario}};
  report["source"] = std::move(source);
  report["seed"] = cfg.seed;
  report["generator"] = std::string(kGeneratorName);
  report["generated_at"] = generated_at;

  RunOutcome out;
  detail::CommandResult c;
  try {
    if (std::find(commands().begin(), commands().end(), cfg.command) == commands().end())
      throw InvalidArgument("unknown command '" + cfg.command + "'");
    if (cfg.format != "json" && cfg.format != "csv")
      throw InvalidArgument("format must be json or csv");
    if (cfg.catalog.has_value() == cfg.scenario.has_value())
      throw InvalidArgument("exactly one of --scenario and --catalog is required");

    const Scenario s = cfg.catalog ? scenario_from_catalog(*cfg.catalog, cfg.seed)
                                   : load_scenario(*cfg.scenario, cfg.seed);
    const auto p = detail::resolve(cfg, s);
    report["parameters"] = {{"eps", p.eps}, {"eta", p.eta}, {"tol", p.tol}, {"levels", p.levels}};
    log(LogLevel::Info, cfg.command + " on " + s.source);

    const auto& cmd = cfg.command;
    if (cmd == "integrate") c = detail::cmd_integrate(s, p);
    else if (cmd == "integrate-prob") c = detail::cmd_integrate_prob(s, p, cfg.seed, false);
    else if (cmd == "riemann-prob") c = detail::cmd_integrate_prob(s, p, cfg.seed, true);
    else if (cmd == "uniqueness") c = detail::cmd_uniqueness(s, p, cfg.seed);
    else if (cmd == "fubini") c = detail::cmd_fubini(s, p, cfg.seed);
    else if (cmd == "derivative") c = detail::cmd_derivative(s, p);
    else if (cmd == "ftc") c = detail::cmd_ftc(s, p, cfg.seed);
    else c = detail::cmd_convergence_table(s, p, cfg.seed);
  } catch (const std::exception& e) {
    out.status = "error";
    out.exit_code = 1;
    out.error = e.what();
    report["status"] = out.status;
    report["exit_code"] = out.exit_code;
    report["error"] = detail::error_to_json(e);
    if (cfg.format == "csv") {
      Table t{{"status", "error_type", "message"},
              {{std::string("error"), report["error"]["type"].get<std::string>(), out.error}}};
      out.report = t.to_csv();
    } else {
      out.report = report.dump(2) + "\n";
    }
    return out;
  }

  out.status = c.status;
  out.exit_code = exit_code_for(c.status);
  report["status"] = out.status;
  report["exit_code"] = out.exit_code;
  report["result"] = std::move(c.result);
  log(LogLevel::Info, "status " + out.status);
  out.report = cfg.format == "csv" ? c.table.to_csv() : report.dump(2) + "\n";
  return out;
}

// execute() plus output: the report goes to cfg.output (stdout when unset);
// errors are also logged to stderr.
inline int run(const RunConfig& cfg) {
  RunOutcome out = execute(cfg);
  if (out.status == "error") log(LogLevel::Error, out.error);
  if (cfg.output) {
    std::ofstream f(*cfg.output, std::ios::binary);
    if (!f || !(f << out.report) || !f.flush()) {
      log(LogLevel::Error, "cannot write '" + *cfg.output + "'");
      return 1;
    }
  } else {
    std::cout << out.report;
  }
  return out.exit_code;
}

}  // namespace gaugeprob::cli
