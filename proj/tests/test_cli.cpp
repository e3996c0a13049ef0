#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "mineq/cli.hpp"
#include "test_support.hpp"

using namespace mineq;
using namespace mineq::testing;
namespace fs = std::filesystem;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("mineq_cli_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p.string();
}

struct CmdRun {
  int code;
  json out;
};

template <class Args, class F>
CmdRun run(F cmd, const Args& a) {
  std::ostringstream out, err;
  const int code = cmd(a, out, err);
  return {code, out.str().empty() ? json() : json::parse(out.str())};
}

TEST(CliSolve, ExampleAlg) {
  cli::SolveArgs a;
  a.instance = fixture("example_alg");
  a.trace = true;
  const CmdRun r = run(cli::cmd_solve, a);
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out["status"], "equilibrium");
  EXPECT_TRUE(r.out.contains("trace"));
}

TEST(CliSolve, NoEquilibriumAndBadInput) {
  cli::SolveArgs a;
  a.instance = fixture("no_eq_single");
  EXPECT_EQ(run(cli::cmd_solve, a).code, cli::kNoEquilibrium);
  a.instance = write_temp("empty.json", "{}");
  EXPECT_EQ(run(cli::cmd_solve, a).code, cli::kInputError);
  a.instance = write_temp("broken.json", "{not json");
  EXPECT_EQ(run(cli::cmd_solve, a).code, cli::kInputError);
  a.instance = fixture("example_alg");
  a.epsilon = "0";
  EXPECT_EQ(run(cli::cmd_solve, a).code, cli::kInputError);
}

TEST(CliSolve, RealizedOutputPassesCheck) {
  cli::SolveArgs a;
  a.instance = fixture("example_alg");
  a.realize = true;
  const CmdRun r = run(cli::cmd_solve, a);
  ASSERT_EQ(r.code, cli::kOk);
  ASSERT_TRUE(r.out.contains("realized_prices"));
  cli::CheckArgs c;
  c.instance = a.instance;
  c.outcome = write_temp("realized.json", r.out.dump());
  EXPECT_EQ(run(cli::cmd_check, c).code, cli::kOk);
  c.mode = "strong";
  EXPECT_EQ(run(cli::cmd_check, c).code, cli::kOk);
}

TEST(CliCheck, Modes) {
  cli::CheckArgs c;
  c.instance = fixture("no_min_eq_iii");
  c.outcome = fixture("outcome_no_min_eq_iii_at_3_2");
  EXPECT_EQ(run(cli::cmd_check, c).code, cli::kOk);
  c.outcome = fixture("outcome_no_min_eq_iii_at_1");
  const CmdRun ce = run(cli::cmd_check, c);
  EXPECT_EQ(ce.code, cli::kCheckFailed);
  EXPECT_EQ(ce.out["violations"][0]["kind"], "loser_envy");
  EXPECT_EQ(ce.out["violations"][0]["buyer"], "i2");
  c.mode = "weak";
  EXPECT_EQ(run(cli::cmd_check, c).code, cli::kOk);
  c.mode = "strong";
  EXPECT_EQ(run(cli::cmd_check, c).code, cli::kCheckFailed);
  c.mode = "lenient";
  EXPECT_EQ(run(cli::cmd_check, c).code, cli::kInputError);
}

TEST(CliCheck, MismatchedOutcomeIsAnInputError) {
  cli::CheckArgs c;
  c.instance = fixture("example_alg");
  c.outcome = fixture("outcome_wrong_items");
  EXPECT_EQ(run(cli::cmd_check, c).code, cli::kInputError);
}

TEST(CliCheck, PlusPricesNeedEpsilon) {
  cli::CheckArgs c;
  c.instance = fixture("no_min_eq_iii");
  c.outcome = write_temp("plus.json", R"({"status":"equilibrium","allocation":[{"buyer":"i1","item":"j"}],
    "prices":[{"item":"j","value":"1","plus":true}]})");
  EXPECT_EQ(run(cli::cmd_check, c).code, cli::kInputError);
  c.epsilon = "1/2";
  EXPECT_EQ(run(cli::cmd_check, c).code, cli::kOk);
}

TEST(CliCheck, IrrationalOutcomeFailsTheCheck) {
  cli::CheckArgs c;
  c.instance = fixture("no_min_eq_iii");
  c.mode = "weak";
  c.outcome = write_temp("irrational.json", R"({"status":"equilibrium","allocation":[{"buyer":"i1","item":"j"}],
    "prices":[{"item":"j","value":"4"}]})");
  const CmdRun r = run(cli::cmd_check, c);
  EXPECT_EQ(r.code, cli::kCheckFailed);
  EXPECT_NE(r.out["reason"].get<std::string>().find("individually rational"), std::string::npos);
}

TEST(CliOracle, ExitCodes) {
  cli::OracleArgs o;
  o.instance = fixture("no_eq_single");
  EXPECT_EQ(run(cli::cmd_oracle, o).code, cli::kNoEquilibrium);
  o.instance = fixture("three_buyers");
  o.resolution = "1/4";
  const CmdRun r = run(cli::cmd_oracle, o);
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out["infimum"][0]["value"], "9/4");
  o.budget = 5;
  EXPECT_EQ(run(cli::cmd_oracle, o).code, cli::kBudgetRefused);
  o.resolution = "-1";
  EXPECT_EQ(run(cli::cmd_oracle, o).code, cli::kInputError);
}

TEST(CliNash, CounterexampleIsReported) {
  cli::NashArgs n;
  n.instance = fixture("mechanism_truthful");
  n.deviator = "i2";
  n.deviations = fixture("mechanism_deviation");
  const CmdRun r = run(cli::cmd_nash, n);
  EXPECT_EQ(r.code, cli::kCheckFailed);
  EXPECT_TRUE(r.out["profitable"].get<bool>());
  n.deviator = "nobody";
  EXPECT_EQ(run(cli::cmd_nash, n).code, cli::kInputError);
}

TEST(CliNash, GridSpec) {
  cli::NashArgs n;
  n.instance = fixture("three_buyers");
  n.deviator = "i3";
  n.grid_spec = "dv=-1,0,1;db=0,1;inf";
  const CmdRun r = run(cli::cmd_nash, n);
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_GT(r.out["deviations_tried"].get<int>(), 0);
}

int binary(const std::string& args) {
  const std::string cmd = std::string(MINEQ_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

TEST(CliBinary, ExitCodes) {
  EXPECT_EQ(binary("solve " + fixture("example_alg")), 0);
  EXPECT_EQ(binary("solve " + fixture("no_eq_single")), 3);
  EXPECT_EQ(binary("solve"), 1);
  EXPECT_EQ(binary("frobnicate"), 1);
  EXPECT_EQ(binary("check " + fixture("no_min_eq_iii") + " " + fixture("outcome_no_min_eq_iii_at_1") + " --mode weak"), 0);
  EXPECT_EQ(binary("check " + fixture("no_min_eq_iii") + " " + fixture("outcome_no_min_eq_iii_at_1")), 4);
  EXPECT_EQ(binary("oracle " + fixture("three_buyers") + " --budget 3"), 2);
  EXPECT_EQ(binary("nash " + fixture("mechanism_truthful") + " --deviator i2 --deviations " +
                   fixture("mechanism_deviation")),
            4);
}

}  // namespace
