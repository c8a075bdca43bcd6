#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace vnfscale::cli {
namespace {

using nlohmann::json;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "vnfscale");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

// Runs the installed binary through the shell.
Outcome run_binary(const std::string& args) {
  const std::string command = std::string(VNFSCALE_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  Outcome o;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) o.out += buf.data();
  const int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, sep)) fields.push_back(f);
  return fields;
}

std::vector<std::string> lines(const std::string& text) { return split(text, '\n'); }

TEST(Cli, SolveTwoStateChain) {
  const Outcome o = run_cli({"solve", "--n0", "1", "--k", "0", "--K", "1", "--lambda", "1", "--mu", "1", "--alpha", "1"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json j = json::parse(o.out);
  EXPECT_DOUBLE_EQ(j["metrics"]["Pb"].get<double>(), 0.5);
  EXPECT_EQ(j["params"]["K"], 1);
}

TEST(Cli, SolveDefaultsRegression) {
  const Outcome o = run_cli({"solve", "--n0", "110", "--k", "28", "--K", "250", "--lambda", "130", "--mu", "1", "--alpha", "0.005"});
  ASSERT_EQ(o.code, kExitOk);
  EXPECT_NEAR(json::parse(o.out)["metrics"]["Wq"].get<double>(), 0.805026039977, 1e-9);
}

TEST(Cli, SolveReferencePointValue) {
  const Outcome o = run_cli({"solve", "--n0", "110", "--k", "28", "--K", "250", "--lambda", "130", "--mu", "1", "--alpha", "0.005"});
  ASSERT_EQ(o.code, kExitOk);
  EXPECT_NEAR(json::parse(o.out)["metrics"]["Wq"].get<double>(), 1.17, 0.05);
}

TEST(Cli, SolveRejectsCapacityBelowServers) {
  const Outcome o = run_cli({"solve", "--K", "50", "--n0", "60", "--k", "0"});
  EXPECT_EQ(o.code, kExitValidation);
  EXPECT_NE(o.err.find("K >= N"), std::string::npos) << o.err;
  EXPECT_TRUE(o.out.empty());
}

TEST(Cli, UnknownFlagIsValidationError) {
  EXPECT_EQ(run_cli({"solve", "--bogus", "1"}).code, kExitValidation);
  EXPECT_EQ(run_cli({}).code, kExitValidation);
}

TEST(Cli, SolveCsv) {
  const Outcome o = run_cli({"solve", "--format", "csv"});
  const auto rows = lines(o.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "lambda,mu,alpha,n0,k,K,L,W,Wq,Pb,S");
  EXPECT_EQ(split(rows[1])[8], "0.805026039977");
}

TEST(Cli, ConfigFileAndPrecedence) {
  const auto path = std::filesystem::temp_directory_path() / "vnfscale_cli_test_config.json";
  std::ofstream(path) << R"({"params": {"lambda": 100, "k": 10}})";
  const json from_file = json::parse(run_cli({"solve", "--config", path.string()}).out);
  EXPECT_EQ(from_file["params"]["lambda"], 100.0);
  EXPECT_EQ(from_file["params"]["k"], 10);
  EXPECT_EQ(from_file["params"]["n0"], 110);
  const json flagged = json::parse(run_cli({"solve", "--config", path.string(), "--k", "12"}).out);
  EXPECT_EQ(flagged["params"]["k"], 12);
  EXPECT_EQ(flagged["params"]["lambda"], 100.0);

  std::ofstream(path) << R"({"params": {"lambda": 100, "kk": 10}})";
  EXPECT_EQ(run_cli({"solve", "--config", path.string()}).code, kExitValidation);
  std::filesystem::remove(path);
}

TEST(Cli, SweepHeaderAndOrder) {
  const Outcome o = run_cli({"sweep", "--param", "lambda", "--from", "100", "--to", "120", "--step", "10", "--series", "10,30"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const auto rows = lines(o.out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], "series,param,value,L,W,Wq,Pb,S");
  EXPECT_EQ(rows[1].substr(0, 16), "k=10,lambda,100,");
  EXPECT_EQ(rows[3].substr(0, 16), "k=10,lambda,120,");
  EXPECT_EQ(rows[4].substr(0, 16), "k=30,lambda,100,");
}

TEST(Cli, SinglePointSweepEqualsSolve) {
  for (const std::vector<std::string>& extra :
       {std::vector<std::string>{"--k", "28"}, {"--k", "0", "--lambda", "60"}, {"--n0", "2", "--k", "2", "--K", "7"}}) {
    std::vector<std::string> solve_args{"solve", "--format", "csv"};
    solve_args.insert(solve_args.end(), extra.begin(), extra.end());
    const auto solve_fields = split(lines(run_cli(solve_args).out)[1]);

    std::vector<std::string> sweep_args{"sweep", "--param", "alpha", "--from", solve_fields[2], "--to", solve_fields[2]};
    sweep_args.insert(sweep_args.end(), extra.begin(), extra.end());
    const auto sweep_rows = lines(run_cli(sweep_args).out);
    ASSERT_EQ(sweep_rows.size(), 2u);
    const auto sweep_fields = split(sweep_rows[1]);
    ASSERT_EQ(sweep_fields.size(), 8u);
    for (int m = 0; m < 5; ++m) EXPECT_EQ(sweep_fields[static_cast<std::size_t>(3 + m)], solve_fields[static_cast<std::size_t>(6 + m)]);
  }
}

TEST(Cli, SweepLightLoadRegion) {
  const Outcome o = run_cli({"sweep", "--param", "lambda", "--from", "50", "--to", "50", "--k", "60"});
  const auto f = split(lines(o.out)[1]);
  EXPECT_LT(std::stod(f[5]), 0.01);
  EXPECT_LT(std::stod(f[7]), 0.01);
}

TEST(Cli, SweepRejectsBadGrids) {
  EXPECT_EQ(run_cli({"sweep", "--param", "k", "--from", "1.5", "--to", "3"}).code, kExitValidation);
  EXPECT_EQ(run_cli({"sweep", "--param", "lambda", "--from", "3", "--to", "1"}).code, kExitValidation);
  EXPECT_EQ(run_cli({"sweep", "--param", "lambda", "--from", "1", "--to", "3", "--step", "0"}).code, kExitValidation);
  const Outcome o = run_cli({"sweep", "--param", "k", "--from", "0", "--to", "200"});
  EXPECT_EQ(o.code, kExitValidation);
  EXPECT_TRUE(o.out.empty());
  EXPECT_NE(o.err.find("k=141"), std::string::npos) << o.err;
}

TEST(Cli, OptimizeModes) {
  const Outcome zero = run_cli({"optimize", "--delta", "0", "--wq-bar", "10"});
  ASSERT_EQ(zero.code, kExitOk) << zero.err;
  EXPECT_EQ(json::parse(zero.out)["k_op"], 0);

  const Outcome calibrated = run_cli({"optimize", "--w1", "1", "--w2", "0.003625"});
  ASSERT_EQ(calibrated.code, kExitOk) << calibrated.err;
  const json j = json::parse(calibrated.out);
  EXPECT_EQ(j["k_op"], 28);
  EXPECT_EQ(j["feasible"], true);
  EXPECT_EQ(j["scan"].size(), 141u);

  EXPECT_EQ(run_cli({"optimize", "--delta", "1", "--wq-bar", "10", "--w1", "1"}).code, kExitValidation);
  EXPECT_EQ(run_cli({"optimize"}).code, kExitValidation);
}

TEST(Cli, OptimizeCsvScan) {
  const Outcome o = run_cli({"optimize", "--format", "csv", "--w1", "1", "--w2", "0.003625"});
  const auto rows = lines(o.out);
  ASSERT_EQ(rows.size(), 143u);
  EXPECT_NE(rows[0].find("k_op=28"), std::string::npos);
  EXPECT_EQ(rows[1], "k,Wq,S,C");
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "vnfscale_cli_test_out.csv";
  ASSERT_EQ(run_cli({"sweep", "--from", "120", "--to", "130", "--step", "10", "--output", path.string()}).code, kExitOk);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "series,param,value,L,W,Wq,Pb,S");
  std::filesystem::remove(path);
}

TEST(Cli, SimulateIsReproducible) {
  const std::string args = "simulate --seed 7 --horizon 2000 --replications 3";
  const Outcome a = run_binary(args);
  const Outcome b = run_binary(args);
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_FALSE(a.out.empty());
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SimulateNonExponentialSmoke) {
  const Outcome o = run_cli({"simulate", "--service-dist", "erlang:5", "--setup-dist", "deterministic", "--horizon", "3000",
                             "--replications", "2"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json j = json::parse(o.out);
  for (const char* m : {"L", "W", "Wq", "Pb", "S"}) EXPECT_TRUE(j["estimates"][m]["mean"].is_number()) << m;
  EXPECT_EQ(j["service"], "erlang:5");
}

TEST(Cli, SimulateRejectsBadDistribution) {
  EXPECT_EQ(run_cli({"simulate", "--service-dist", "gamma"}).code, kExitValidation);
  EXPECT_EQ(run_cli({"simulate", "--horizon", "10", "--warmup", "20"}).code, kExitValidation);
}

TEST(Cli, CompareNonExponentialIsValidationError) {
  EXPECT_EQ(run_cli({"compare", "--setup-dist", "deterministic", "--horizon", "100", "--replications", "2"}).code,
            kExitValidation);
}

TEST(Cli, StrictCompareExitCodeFollowsCoverage) {
  for (const char* seed : {"1", "2", "3", "4", "5"}) {
    const Outcome o = run_cli({"compare", "--n0", "2", "--k", "2", "--K", "7", "--lambda", "1.5", "--alpha", "0.25",
                               "--horizon", "50", "--warmup", "0", "--replications", "2", "--seed", seed, "--strict"});
    const json j = json::parse(o.out);
    EXPECT_EQ(o.code, j["all_covered"].get<bool>() ? kExitOk : kExitCoverage) << seed;
  }
}

TEST(Cli, StrictCompareFailsOnStartupTransient) {
  // Three seconds from an empty system is far from stationary, and 400
  // replications make the intervals narrow around the biased means.
  const Outcome o = run_cli({"compare", "--n0", "2", "--k", "2", "--K", "7", "--lambda", "3", "--alpha", "0.25",
                             "--horizon", "3", "--warmup", "0", "--replications", "400", "--strict"});
  EXPECT_EQ(o.code, kExitCoverage);
  EXPECT_FALSE(json::parse(o.out)["all_covered"].get<bool>());
  EXPECT_EQ(run_cli({"compare", "--n0", "2", "--k", "2", "--K", "7", "--lambda", "3", "--alpha", "0.25", "--horizon", "3",
                     "--warmup", "0", "--replications", "400"})
                .code,
            kExitOk);
}

TEST(Cli, StrictCompareAtDefaults) {
  const Outcome o = run_binary("compare --lambda 130 --k 28 --replications 30 --seed 42 --strict");
  EXPECT_EQ(o.code, kExitOk) << o.out;
  const json j = json::parse(o.out);
  for (const auto& row : j["rows"]) EXPECT_TRUE(row["covered"].get<bool>()) << row.dump();
}

}  // namespace
}  // namespace vnfscale::cli
