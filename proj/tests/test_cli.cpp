#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lcaforms/cli.hpp"

using namespace lcaforms;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json find_case(const Json& report, const std::string& id) {
  for (const auto& c : report["cases"]) {
    if (c["id"] == id) return c;
  }
  return Json();
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("lcaforms_test_" + name);
}

}  // namespace

TEST(Cli, SolveZ4ModeA) {
  const auto r = run({"solve", "--group", "4", "--mode", "A"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["suite"], "solve");
  EXPECT_EQ(j["overall"], "pass");
  const auto s0 = find_case(j, "solution-0");
  const auto s1 = find_case(j, "solution-1");
  EXPECT_NE(s0["detail"].get<std::string>().find("HaarCorwin"), std::string::npos);
  EXPECT_NE(s1["detail"].get<std::string>().find("HaarTimesOrder2"), std::string::npos);
  EXPECT_NE(s1["detail"].get<std::string>().find("x=2"), std::string::npos);
  EXPECT_TRUE(find_case(j, "solution-2").is_null());
  EXPECT_EQ(find_case(j, "family-equivalence")["status"], "pass");
}

TEST(Cli, SolveModeB) {
  const auto r = run({"solve", "--group", "2,3", "--mode", "B"});
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"solve", "--group", "4", "--bogus"}).code, 2);
  EXPECT_EQ(run({"solve"}).code, 2);
  EXPECT_EQ(run({"solve", "--group", "4", "--mode", "C"}).code, 2);
  EXPECT_EQ(run({"solve", "--group", "1"}).code, 2);
  EXPECT_EQ(run({"solve", "--group", "x"}).code, 2);
  EXPECT_EQ(run({"forms", "--group", "4", "--dist", "weird"}).code, 2);
  EXPECT_EQ(run({"forms", "--group", "4", "--dist", "point:x=1,2"}).code, 2);
  EXPECT_EQ(run({"mc", "--n", "10"}).code, 2);
  EXPECT_EQ(run({"counterexample", "--a", "3,4"}).code, 2);
  EXPECT_EQ(run({"counterexample", "--a", "3,5", "--c", "2:1/8"}).code, 2);
  EXPECT_EQ(run({"suite"}).code, 2);
  const auto r = run({"frobnicate"});
  EXPECT_FALSE(r.err.empty());
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, McGaussianNegativeControl) {
  const auto r = run({"mc", "--law", "gaussian", "--n", "200000", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = Json::parse(r.out);
  const auto a = find_case(j, "forms-A");
  EXPECT_EQ(a["status"], "fail");
  EXPECT_EQ(a["expected"], "fail");
  EXPECT_EQ(j["overall"], "pass");
  EXPECT_EQ(j["seed"], 7u);
}

TEST(Cli, McSechAndTwoPoint) {
  auto r = run({"mc", "--law", "sech", "--sigma", "1", "--n", "20000", "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(find_case(Json::parse(r.out), "forms-A")["status"], "pass");
  r = run({"mc", "--law", "twopoint", "--a", "2", "--n", "20000", "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(find_case(Json::parse(r.out), "forms-B")["status"], "pass");
}

TEST(Cli, IdenticalArgumentsIdenticalBytes) {
  const std::vector<std::string> args{"mc", "--law", "sech", "--n", "5000", "--seed", "11"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> sol{"solenoid", "--a", "3,5,7", "--sigma", "0.5", "--seed", "4"};
  EXPECT_EQ(run(sol).out, run(sol).out);
}

TEST(Cli, Family) {
  const auto r = run({"family", "--group", "2,3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["cases"].size(), 4u);
}

TEST(Cli, FormsMiniLanguage) {
  auto r = run({"forms", "--group", "3", "--dist", "haar:K=1"});
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = Json::parse(r.out);
  EXPECT_NE(find_case(j, "equivalence-A")["detail"].get<std::string>().find("equal"), std::string::npos);
  EXPECT_EQ(find_case(j, "family-characterization")["status"], "pass");

  r = run({"forms", "--group", "2,2", "--dist", "haar:K=1,0;0,1"});
  EXPECT_EQ(r.code, 0);
  r = run({"forms", "--group", "16", "--dist", "twopoint:a=1"});
  ASSERT_EQ(r.code, 0);
  j = Json::parse(r.out);
  EXPECT_NE(find_case(j, "equivalence-B")["detail"].get<std::string>().find(", equal"), std::string::npos);
  EXPECT_EQ(run({"forms", "--group", "4", "--dist", "uniform"}).code, 0);
  EXPECT_EQ(run({"forms", "--group", "2,3", "--dist", "point:x=1,2"}).code, 0);
  EXPECT_EQ(run({"forms", "--group", "12", "--dist", "random:seed=9"}).code, 0);
}

TEST(Cli, SolenoidAndCounterexample) {
  auto r = run({"solenoid", "--a", "3,5,7", "--sigma", "1"});
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = Json::parse(r.out);
  EXPECT_EQ(find_case(j, "sech-mode-a-on-(2)Z")["status"], "fail");
  EXPECT_EQ(find_case(j, "sech-mode-a-on-(2)Z")["expected"], "fail");

  r = run({"solenoid", "--a", "2,3", "--sigma", "1"});
  EXPECT_EQ(r.code, 0) << r.out;

  r = run({"counterexample", "--a", "3,5,7"});
  ASSERT_EQ(r.code, 0) << r.out;
  j = Json::parse(r.out);
  EXPECT_EQ(j["config"]["c"]["1"], "1/8");
  EXPECT_EQ(j["config"]["c"]["-5/3"], "1/32");

  r = run({"counterexample", "--a", "3,5", "--c", "1:1/8,1/5:1/16"});
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, OutFile) {
  const auto path = temp_file("out.json");
  std::filesystem::remove(path);
  const auto r = run({"solve", "--group", "3", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(Json::parse(buf.str())["suite"], "solve");
  EXPECT_EQ(buf.str(), run({"solve", "--group", "3"}).out);
  std::filesystem::remove(path);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto path = temp_file("config.toml");
  {
    std::ofstream f(path);
    f << "seed=5\n[mc]\nlaw=\"twopoint\"\na=2\nn=3000\n";
  }
  auto r = run({"--config", path.string(), "mc"});
  ASSERT_EQ(r.code, 0) << r.err << r.out;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["seed"], 5u);
  EXPECT_EQ(j["config"]["law"], "twopoint");
  EXPECT_EQ(j["config"]["n"], 3000u);

  r = run({"--config", path.string(), "mc", "--n", "4000", "--seed", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = Json::parse(r.out);
  EXPECT_EQ(j["seed"], 6u);
  EXPECT_EQ(j["config"]["n"], 4000u);
  std::filesystem::remove(path);

  EXPECT_EQ(run({"--config", "/nonexistent/lcaforms.toml", "mc"}).code, 2);
}
