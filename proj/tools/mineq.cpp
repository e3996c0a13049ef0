#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "mineq/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Minimum competitive equilibrium for unit-demand markets with budgets"};
  app.require_subcommand(1);

  mineq::cli::SolveArgs solve;
  auto* s = app.add_subcommand("solve", "compute the minimum equilibrium");
  s->add_option("instance", solve.instance, "instance JSON")->required();
  s->add_flag("--trace", solve.trace, "include the stage trace");
  s->add_flag("--realize", solve.realize, "emit concrete prices for plus-flagged items");
  s->add_option("--epsilon", solve.epsilon, "lift bound for --realize")->capture_default_str();

  mineq::cli::CheckArgs check;
  std::string check_eps;
  auto* c = app.add_subcommand("check", "verify an outcome file");
  c->add_option("instance", check.instance, "instance JSON")->required();
  c->add_option("outcome", check.outcome, "outcome JSON")->required();
  c->add_option("--mode", check.mode, "ce, weak or strong")->check(CLI::IsMember({"ce", "weak", "strong"}));
  auto* ce = c->add_option("--epsilon", check_eps, "realize plus-prices by this uniform raise");

  mineq::cli::OracleArgs oracle;
  std::string res, bound;
  auto* o = app.add_subcommand("oracle", "brute-force grid equilibria");
  o->add_option("instance", oracle.instance, "instance JSON")->required();
  auto* ores = o->add_option("--resolution", res, "grid step");
  auto* obound = o->add_option("--bound", bound, "largest grid price");
  o->add_option("--budget", oracle.budget, "work budget")->capture_default_str();

  mineq::cli::NashArgs nash;
  std::string spec, devfile;
  auto* n = app.add_subcommand("nash", "best-response probe for one buyer");
  n->add_option("instance", nash.instance, "instance JSON")->required();
  n->add_option("--deviator", nash.deviator, "buyer name")->required();
  auto* nspec = n->add_option("--grid-spec", spec, "e.g. dv=-1,0,1;db=0;inf");
  auto* nfile = n->add_option("--deviations", devfile, "JSON array of bid rows");
  n->add_option("--epsilon", nash.epsilon, "lift bound for plus-prices")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : mineq::cli::kInputError;
  }

  if (*s) return mineq::cli::cmd_solve(solve, std::cout, std::cerr);
  if (*c) {
    if (*ce) check.epsilon = check_eps;
    return mineq::cli::cmd_check(check, std::cout, std::cerr);
  }
  if (*o) {
    if (*ores) oracle.resolution = res;
    if (*obound) oracle.bound = bound;
    return mineq::cli::cmd_oracle(oracle, std::cout, std::cerr);
  }
  if (*nspec) nash.grid_spec = spec;
  if (*nfile) nash.deviations = devfile;
  return mineq::cli::cmd_nash(nash, std::cout, std::cerr);
}
