#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "cli/commands.hpp"
#include "cli/output.hpp"

namespace {

using namespace fpconvex::cli;
namespace fs = std::filesystem;

fs::path work_dir(const std::string& name) {
  const fs::path dir = fs::path(FPCONVEX_WORK_DIR) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct CliRun {
  int code = 0;
  std::string err;
};

CliRun run(const std::string& name, const Json& config, const fs::path& out, std::uint64_t seed = 0, int jobs = 1) {
  std::ostringstream log, err;
  const int code = run_command(name, config, RunOptions{out, seed, jobs}, log, err);
  return {code, err.str()};
}

TEST(Output, FormatsDoublesAtFullPrecision) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(-2.5e-20), "-2.4999999999999999e-20");
}

TEST(Output, JsonKeepsInsertionOrder) {
  Json j;
  j["zeta"] = 1;
  j["alpha"] = 0.1;
  j["list"] = Json::array({1.0, 2.5});
  j["nested"]["b"] = true;
  j["nested"]["a"] = nullptr;
  j["bad"] = std::nan("");
  const std::string expected =
      "{\n"
      "  \"zeta\": 1,\n"
      "  \"alpha\": 0.10000000000000001,\n"
      "  \"list\": [1, 2.5],\n"
      "  \"nested\": {\n"
      "    \"b\": true,\n"
      "    \"a\": null\n"
      "  },\n"
      "  \"bad\": null\n"
      "}\n";
  EXPECT_EQ(dump_json(j), expected);
}

TEST(Output, CsvRows) {
  CsvWriter csv({"t", "x"});
  csv.add_row({0.0, 0.1});
  EXPECT_EQ(csv.str(), "t,x\n0,0.10000000000000001\n");
}

TEST(Simulate, UniformStateIsStationary) {
  const fs::path out = work_dir("simulate_uniform");
  const Json config = Json::parse(R"({"n": 8, "potential": {"kind": "zero"}, "rho0": {"kind": "uniform"},
                                      "t_end": 0.5, "samples": 6})");
  ASSERT_EQ(run("simulate", config, out).code, kExitOk);
  std::istringstream csv(read_file(out / "simulate.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line.rfind("t,rho_0,", 0), 0u);
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string cell;
    std::getline(fields, cell, ',');
    for (int i = 0; i < 9; ++i) {
      std::getline(fields, cell, ',');
      EXPECT_NEAR(std::stod(cell), 1.0 / 9.0, 1e-14);
    }
  }
  EXPECT_EQ(rows, 6);
  EXPECT_TRUE(fs::exists(out / "simulate.json"));
}

TEST(Simulate, AprioriEstimatesHold) {
  const fs::path out = work_dir("simulate_apriori");
  const Json config = Json::parse(fs::exists(fs::path(FPCONVEX_CONFIG_DIR) / "simulate.json")
                                      ? read_file(fs::path(FPCONVEX_CONFIG_DIR) / "simulate.json")
                                      : "{}");
  ASSERT_EQ(run("simulate", config, out).code, kExitOk);
  const Json report = Json::parse(read_file(out / "simulate.json"));
  EXPECT_TRUE(report["entropy_nonincreasing"].get<bool>());
  EXPECT_TRUE(report.contains("apriori"));
}

TEST(Config, MalformedAndUnknownFieldsAreErrors) {
  const fs::path out = work_dir("config_errors");
  CliRun r = run("simulate", Json::parse(R"({"n": 8, "tend": 1})"), out);
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("tend"), std::string::npos) << r.err;
  r = run("simulate", Json::parse(R"({"n": 8, "phi": {"kind": "power", "alpha": "x"}})"), out);
  EXPECT_EQ(r.code, kExitError);
  EXPECT_NE(r.err.find("phi.alpha"), std::string::npos) << r.err;
  r = run("convexity", Json::parse(R"({"n": 1})"), out);
  EXPECT_EQ(r.code, kExitError);
  r = run("simulate", Json::parse(R"({"path": "heat", "potential": {"kind": "quadratic", "gamma": 1}})"), out);
  EXPECT_EQ(r.code, kExitError);
  EXPECT_EQ(run("no-such-command", Json::object(), out).code, kExitError);
}

TEST(Convexity, LambdaHAtUniformState) {
  const fs::path out = work_dir("convexity_default");
  const Json config = Json::parse(R"({"n": 10, "potential": {"kind": "quadratic", "gamma": 1.0},
                                      "state": {"kind": "uniform"}})");
  ASSERT_EQ(run("convexity", config, out).code, kExitOk);
  const Json report = Json::parse(read_file(out / "convexity.json"));
  EXPECT_NEAR(report["states"][0]["lambda_h"].get<double>(), 0.99750416146353738, 1e-15);
  EXPECT_EQ(report["summary"]["not_psd"].get<int>(), 0);
}

TEST(Convexity, HeatDefaultsAreDominant) {
  const fs::path out = work_dir("convexity_heat");
  const Json config = Json::parse(R"({"n": 8, "path": "heat", "state": {"kind": "random"}})");
  ASSERT_EQ(run("convexity", config, out, 4).code, kExitOk);
  const Json report = Json::parse(read_file(out / "convexity.json"));
  EXPECT_EQ(report["states"][0]["certificate"].get<std::string>(), "DominanceCertified");
}

TEST(Convexity, HugeLambdaIsNotPsd) {
  const fs::path out = work_dir("convexity_violation");
  const Json config = Json::parse(R"({"n": 8, "potential": {"kind": "quadratic", "gamma": 1.0}, "lambda": 1e4})");
  EXPECT_EQ(run("convexity", config, out).code, kExitViolation);
  const Json report = Json::parse(read_file(out / "convexity.json"));
  EXPECT_EQ(report["states"][0]["certificate"].get<std::string>(), "NotPSD");
  EXPECT_TRUE(report["states"][0]["witness"].is_array());
}

TEST(Counterexample, ReportsViolation) {
  const fs::path out = work_dir("counterexample");
  EXPECT_EQ(run("counterexample", Json::object(), out).code, kExitViolation);
  const Json report = Json::parse(read_file(out / "counterexample.json"));
  EXPECT_TRUE(report["witness"]["found"].get<bool>());
}

TEST(Geodesic, IdenticalEndpointsHaveZeroDistance) {
  const fs::path out = work_dir("geodesic_trivial");
  const Json config = Json::parse(R"({"n": 4, "path": "heat", "rho0": {"kind": "uniform"}, "rho1": {"kind": "uniform"}})");
  ASSERT_EQ(run("geodesic", config, out).code, kExitOk);
  const Json report = Json::parse(read_file(out / "geodesic.json"));
  EXPECT_EQ(report["W"].get<double>(), 0.0);
  EXPECT_TRUE(fs::exists(out / "geodesic.csv"));
}

TEST(Geodesic, ZeroToleranceIsAGeodesicFailure) {
  const fs::path out = work_dir("geodesic_failure");
  const Json config = Json::parse(R"({"n": 4, "path": "heat", "rho0": {"kind": "random"}, "rho1": {"kind": "random"},
                                      "tol": 0, "max_minimization_iterations": 200})");
  EXPECT_EQ(run("geodesic", config, out).code, kExitGeodesicFailure);
  const Json report = Json::parse(read_file(out / "geodesic.json"));
  EXPECT_EQ(report["status"].get<std::string>(), "geodesic-failure");
}

TEST(Lambda, ConvergesToGamma) {
  const fs::path out = work_dir("lambda");
  ASSERT_EQ(run("lambda", Json::object(), out).code, kExitOk);
  const Json report = Json::parse(read_file(out / "lambda.json"));
  double previous_gap = 1.0;
  for (const auto& row : report["values"]) {
    const double gap = row["gap"].get<double>();
    EXPECT_GT(gap, 0.0);
    EXPECT_LT(gap, previous_gap);
    EXPECT_LE(gap, row["half_h_squared"].get<double>());
    EXPECT_NEAR(row["lambda_h"].get<double>(), row["closed_form"].get<double>(), 1e-13);
    previous_gap = gap;
  }
}

TEST(VerifyMeans, SmallRunPasses) {
  const fs::path out = work_dir("verify_means");
  const Json config = Json::parse(R"({"identity_points": 200, "concavity_samples": 200})");
  ASSERT_EQ(run("verify-means", config, out).code, kExitOk);
  EXPECT_TRUE(Json::parse(read_file(out / "verify-means.json"))["passed"].get<bool>());
}

TEST(Determinism, SameSeedSameBytesAcrossJobCounts) {
  const fs::path a = work_dir("determinism_a"), b = work_dir("determinism_b");
  const Json config = Json::parse(R"({"n": 8, "path": "heat", "simulation": {"rho0": {"kind": "random"}, "t_end": 0.1}})");
  ASSERT_EQ(run("convexity", config, a, 7, 1).code, kExitOk);
  ASSERT_EQ(run("convexity", config, b, 7, 4).code, kExitOk);
  EXPECT_EQ(read_file(a / "convexity.json"), read_file(b / "convexity.json"));
}

TEST(Binary, RunsFromConfigFile) {
  const fs::path out = work_dir("binary");
  const std::string cmd = std::string("\"") + FPCONVEX_TOOL_PATH + "\" lambda --config \"" + FPCONVEX_CONFIG_DIR +
                          "/lambda.json\" --out \"" + out.string() + "\" > /dev/null 2>&1";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(out / "lambda.json"));
  const std::string bad = std::string("\"") + FPCONVEX_TOOL_PATH + "\" lambda --jobs 0 > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  EXPECT_TRUE(WIFEXITED(status) && WEXITSTATUS(status) == 1);
}

}  // namespace
