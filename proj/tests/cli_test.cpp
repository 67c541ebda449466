#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace rip::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("rip_cli_") + info->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& body) {
    const fs::path path = dir_ / name;
    std::ofstream(path) << body;
    return path;
  }

  struct Outcome {
    int code;
    std::string out;
    std::string err;
    json parsed() const { return json::parse(out); }
  };

  static Outcome execute(const RunConfig& config) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(config, out, err);
    return {code, out.str(), err.str()};
  }

  static Outcome execute_args(std::vector<std::string> args) {
    args.insert(args.begin(), "rip-select");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

TEST_F(CliTest, RankModeOnIdentity) {
  RunConfig config;
  config.matrix_path = write("eye.csv", "1,0\n0,1\n");
  config.k = 2;
  const auto result = execute(config);
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const json report = result.parsed();
  EXPECT_EQ(report["mode"], "rank");
  EXPECT_EQ(report["subset"], json::array({1, 2}));
  EXPECT_NEAR(report["sigma_min"].get<double>(), 1.0, 1e-9);
  EXPECT_NEAR(report["bound_report"]["rank_bound"].get<double>(),
              (std::sqrt(2.0) - 1.0) * (std::sqrt(2.0) - 1.0) / 2.0, 1e-9);
  EXPECT_TRUE(report["bound_report"]["epsilon_used"].is_null());
  EXPECT_EQ(report["lambda_trace"].size(), 3u);
  EXPECT_TRUE(report["certified"].get<bool>());
}

TEST_F(CliTest, ExplicitUnitWeightsMatchDefault) {
  RunConfig config;
  config.matrix_path = write("a.csv", "1,0,1\n0,1,1\n");
  config.k = 2;
  const auto defaults = execute(config);
  config.weights_path = write("w.txt", "1\n1\n1\n");
  const auto explicit_ones = execute(config);
  ASSERT_EQ(defaults.code, kExitOk);
  EXPECT_EQ(defaults.out, explicit_ones.out);
  EXPECT_EQ(defaults.parsed()["subset"], json::array({1, 2}));
}

TEST_F(CliTest, NormalizedModeReportsEpsilon) {
  RunConfig config;
  config.matrix_path = write("d.csv", "3,0\n0,4\n");
  config.mode = Mode::normalized;
  config.epsilon = 0.5;
  config.weights_path = write("w.txt", "1\n2\n");
  const auto result = execute(config);
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const json report = result.parsed();
  EXPECT_DOUBLE_EQ(report["sigma_bound"].get<double>(), 0.5);
  EXPECT_GE(report["sigma_min"].get<double>(), 0.5 - 1e-7);
  EXPECT_NE(result.err.find("ignored"), std::string::npos);
}

TEST_F(CliTest, StableModeChoosesKFromEpsilon) {
  RunConfig config;
  config.matrix_path = write("eye.csv", "1,0,0\n0,1,0\n0,0,1\n");
  config.mode = Mode::stable;
  config.epsilon = 0.5;
  const auto result = execute(config);
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const json report = result.parsed();
  // floor(0.25 * 3) + 1
  EXPECT_EQ(report["k"], 1);
  EXPECT_NEAR(report["sigma_bound"].get<double>(), 0.5, 1e-12);
}

TEST_F(CliTest, OutputIsByteIdenticalAcrossRuns) {
  RunConfig config;
  config.matrix_path = write("a.csv", "1,2,0.5,-1\n0,1,3,2\n2,-1,1,0.25\n");
  config.weights_path = write("w.txt", "1\n-2\n0.5\n3\n");
  config.k = 2;
  const auto first = execute(config);
  const auto second = execute(config);
  ASSERT_EQ(first.code, kExitOk) << first.err;
  EXPECT_EQ(first.out, second.out);

  RunConfig bench;
  bench.mode = Mode::bench;
  bench.seed = 5;
  bench.bench_rows = 3;
  bench.bench_cols = 4;
  EXPECT_EQ(execute(bench).out, execute(bench).out);
}

TEST_F(CliTest, VerifyModeRunsOracles) {
  RunConfig config;
  config.matrix_path = write("a.csv", "1,0,1\n0,1,1\n");
  config.mode = Mode::verify;
  config.k = 2;
  const auto result = execute(config);
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const json oracle = result.parsed()["oracle"];
  EXPECT_TRUE(oracle["expected_poly_match"].get<bool>());
  EXPECT_TRUE(oracle["interlacing_ok"].get<bool>());
  EXPECT_TRUE(oracle["greedy_within_optimum"].get<bool>());
  EXPECT_EQ(oracle["best_subset"].size(), 2u);
}

TEST_F(CliTest, VerifyModeBudgetIsAnInputError) {
  RunConfig config;
  config.matrix_path = write("a.csv", "1,0,1\n0,1,1\n");
  config.mode = Mode::verify;
  config.k = 2;
  config.budget = 2;
  const auto result = execute(config);
  EXPECT_EQ(result.code, kExitInputError);
  EXPECT_TRUE(result.out.empty());
}

TEST_F(CliTest, BenchModeIsCertified) {
  RunConfig config;
  config.mode = Mode::bench;
  config.bench_rows = 4;
  config.bench_cols = 5;
  const auto result = execute(config);
  ASSERT_EQ(result.code, kExitOk) << result.err;
  const json report = result.parsed();
  EXPECT_TRUE(report["all_certified"].get<bool>());
  // Three spectra, k = 1..4 each.
  EXPECT_EQ(report["table"].size(), 12u);
  for (const auto& row : report["table"]) EXPECT_TRUE(row["certified"].get<bool>());

  config.spectrum = "lumpy";
  EXPECT_EQ(execute(config).code, kExitInputError);
}

TEST_F(CliTest, InputErrors) {
  RunConfig missing;
  missing.k = 1;
  EXPECT_EQ(execute(missing).code, kExitInputError);

  RunConfig ragged;
  ragged.matrix_path = write("ragged.csv", "1,2\n3\n");
  ragged.k = 1;
  EXPECT_EQ(execute(ragged).code, kExitInputError);

  RunConfig no_file;
  no_file.matrix_path = dir_ / "absent.csv";
  no_file.k = 1;
  EXPECT_EQ(execute(no_file).code, kExitInputError);

  RunConfig short_weights;
  short_weights.matrix_path = write("eye.csv", "1,0\n0,1\n");
  short_weights.weights_path = write("w.txt", "1\n");
  short_weights.k = 1;
  const auto mismatch = execute(short_weights);
  EXPECT_EQ(mismatch.code, kExitInputError);
  EXPECT_NE(mismatch.err.find("columns"), std::string::npos);

  short_weights.weights_path = write("w0.txt", "1\n0\n");
  EXPECT_EQ(execute(short_weights).code, kExitInputError);

  RunConfig too_big;
  too_big.matrix_path = write("low.csv", "1,1\n1,1\n");
  too_big.k = 2;
  const auto rank = execute(too_big);
  EXPECT_EQ(rank.code, kExitInputError);
  EXPECT_NE(rank.err.find("rank"), std::string::npos);

  RunConfig no_k;
  no_k.matrix_path = write("eye2.csv", "1,0\n0,1\n");
  EXPECT_EQ(execute(no_k).code, kExitInputError);
  no_k.mode = Mode::stable;
  EXPECT_EQ(execute(no_k).code, kExitInputError);
  no_k.epsilon = 1.5;
  EXPECT_EQ(execute(no_k).code, kExitInputError);
}

TEST_F(CliTest, NumericalFailureExitsWithTwo) {
  RunConfig config;
  config.matrix_path = write("eye.csv", "1,0\n0,1\n");
  config.k = 2;
  config.imag_tol = 1e-300;
  const auto result = execute(config);
  EXPECT_EQ(result.code, kExitNotCertified);
  EXPECT_NE(result.err.find("real-rooted"), std::string::npos);
}

TEST_F(CliTest, FlagParsing) {
  const fs::path matrix = write("eye.csv", "1,0\n0,1\n");
  const auto ok = execute_args({"--matrix", matrix.string(), "--k", "2", "--r", "2"});
  ASSERT_EQ(ok.code, kExitOk) << ok.err;
  EXPECT_EQ(ok.parsed()["bound_report"]["r_used"], 2);

  EXPECT_EQ(execute_args({"--help"}).code, kExitOk);
  EXPECT_EQ(execute_args({"--mode", "fancy"}).code, kExitInputError);
  EXPECT_EQ(execute_args({"--matrix", matrix.string(), "--k", "0"}).code, kExitInputError);
  EXPECT_EQ(execute_args({"--matrix", matrix.string(), "--k", "two"}).code, kExitInputError);
  EXPECT_EQ(execute_args({"--unknown"}).code, kExitInputError);

  const auto bench = execute_args({"--mode", "bench", "--rows", "3", "--cols", "3", "--spectrum",
                                   "decay", "--seed", "9"});
  ASSERT_EQ(bench.code, kExitOk) << bench.err;
  EXPECT_EQ(bench.parsed()["table"][0]["spectrum"], "decay-1/sqrt(i)");
}

}  // namespace
}  // namespace rip::cli
