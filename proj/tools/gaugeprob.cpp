#include <string>

#include "CLI11.hpp"
#include "gaugeprob/cli/run.hpp"

int main(int argc, char** argv) {
  using gaugeprob::cli::RunConfig;
  RunConfig cfg;
  std::string scenario, catalog, output;
  double eps = 0.0, eta = 0.0, tol = 0.0;
  int levels = 0;

  CLI::App app{"Gauge integration of real and random functions"};
  app.add_option("command", cfg.command, "Computation to run")
      ->required()
      ->check(CLI::IsMember(gaugeprob::cli::commands()));
  auto* scen = app.add_option("--scenario", scenario, "Scenario JSON file");
  auto* cat = app.add_option("--catalog", catalog, "Builtin catalog id");
  scen->excludes(cat);
  auto* out = app.add_option("--out", output, "Report path (default: stdout)");
  app.add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", cfg.seed, "Seed for sampled coefficients and verification retags");
  auto* o_eps = app.add_option("--eps", eps, "Deviation threshold eps");
  auto* o_eta = app.add_option("--eta", eta, "Tail probability bound eta");
  auto* o_tol = app.add_option("--tol", tol, "Refinement tolerance");
  auto* o_lev = app.add_option("--levels", levels, "Refinement level cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*scen) cfg.scenario = scenario;
  if (*cat) cfg.catalog = catalog;
  if (*out) cfg.output = output;
  if (*o_eps) cfg.eps = eps;
  if (*o_eta) cfg.eta = eta;
  if (*o_tol) cfg.tol = tol;
  if (*o_lev) cfg.levels = levels;
  return gaugeprob::cli::run(cfg);
}
