#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include <json.hpp>

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + CONEWEYL_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (const std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST(Cli, UnknownSuiteIsUsageError) { EXPECT_EQ(run("verify nosuch").code, 2); }
TEST(Cli, UnknownTaskIsUsageError) { EXPECT_EQ(run("compute nosuch").code, 2); }
TEST(Cli, MissingSubcommandIsUsageError) { EXPECT_EQ(run("").code, 2); }
TEST(Cli, BadParameterIsUsageError) { EXPECT_EQ(run("verify cone --kappa -1").code, 2); }
TEST(Cli, BadConfigFileIsUsageError) {
  const std::string path = testing::TempDir() + "coneweyl_bad_config.json";
  std::ofstream(path) << R"({"lmax": 8, "colour": 3})";
  EXPECT_EQ(run("verify cone --config " + path).code, 2);
}

TEST(Cli, VerifyWeylPasses) {
  const auto r = run("verify weyl");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_GT(j["checks"].size(), 5u);
  EXPECT_EQ(j["config"]["lmax"], 48);
  EXPECT_FALSE(j.contains("timestamp"));
}

TEST(Cli, VerifyGnsReportsKernelCheck) {
  const auto r = run("verify gns");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& c : j["checks"])
    if (c["check"].get<std::string>().find("hyperbolic kernel") != std::string::npos) {
      found = true;
      EXPECT_LT(c["residual"].get<double>(), 1e-8);
    }
  EXPECT_TRUE(found);
}

TEST(Cli, UnderResolvedRunFails) { EXPECT_EQ(run("verify cone --lmax 4").code, 1); }

TEST(Cli, DeterministicAndThreadIndependent) {
  const auto a = run("verify weyl --lmax 12", "CONEWEYL_THREADS=1");
  const auto b = run("verify weyl --lmax 12", "CONEWEYL_THREADS=3");
  auto ja = nlohmann::json::parse(a.out), jb = nlohmann::json::parse(b.out);
  EXPECT_EQ(ja["config"]["threads"], 1);
  EXPECT_EQ(jb["config"]["threads"], 3);
  ja["config"].erase("threads");
  jb["config"].erase("threads");
  EXPECT_EQ(ja.dump(), jb.dump());
  EXPECT_EQ(a.out, run("verify weyl --lmax 12", "CONEWEYL_THREADS=1").out);
}

TEST(Cli, ComputeKernel) {
  const auto r = run("compute kernel --chi 1 --n 1");
  ASSERT_EQ(r.code, 0);
  const auto row = nlohmann::json::parse(r.out)["rows"][0];
  EXPECT_NEAR(row["closed_form"].get<double>(), 0.90516, 5e-6);
  EXPECT_LT(row["rel_err"].get<double>(), 1e-8);
  const auto csv = run("compute kernel --chi 0:0.5:0.25 --n 1 2 --format csv");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 7);
}

TEST(Cli, ComputeCasimir) {
  const auto r = run("compute casimir --x 0 0.3 0 0 --n 1");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LT(j["casimir2"]["residual"].get<double>(), 1e-6 * j["casimir2"]["scale"].get<double>());
  EXPECT_EQ(run("compute casimir --x 0.2 0.3 0 0 --n 1").code, 2);
  EXPECT_EQ(run("compute casimir --x 0 0.3 0 0 --v 2 0 0 0 --n 1").code, 2);
}

TEST(Cli, ComputeFieldFlux) {
  const auto r = run("compute field --pair coulomb --grid sphere --R 2 --t 0 --lmax 24 --grid-lmax 12");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["flux"].get<double>(), 1.0, 1e-3);
  EXPECT_EQ(run("compute field --R 1 --t 2").code, 2);
}

TEST(Cli, ComputeGramWritesFile) {
  const std::string path = testing::TempDir() + "coneweyl_gram.json";
  ASSERT_EQ(run("compute gram --n 1 --size 4 --lmax 16 --out " + path).code, 0);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["gram"]["matrix"].size(), 4u);
  EXPECT_TRUE(j["gram"]["psd"].get<bool>());
}
