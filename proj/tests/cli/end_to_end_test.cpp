#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "cli/xml_check.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the installed tool through the shell; stderr is discarded unless merged.
Run run(const std::string& args, bool merge_stderr = false, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + std::string(HWSTAFF_CLI_PATH) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class ScratchDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hwstaff_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(Cli, ComputeAllMethods) {
  const auto r = run("compute --s 5 --a 4 --method all");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("s,a,method,value,error_bound\n"), std::string::npos);
  EXPECT_NE(r.out.find("5,4,recurrence,0.5541125541125"), std::string::npos);
  EXPECT_NE(r.out.find(",quadrature,0.5541125541125"), std::string::npos);
  EXPECT_NE(r.out.find(",gamma,0.5541125541125"), std::string::npos);
}

TEST(Cli, ComputeRealServersUsesQuadrature) {
  const auto r = run("compute --s 2.5 --a 1.5");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("2.5,1.5,quadrature,0.39787554088994"), std::string::npos);
}

TEST(Cli, DomainErrorsExitTwo) {
  EXPECT_EQ(run("compute --s 4 --a 5").code, 2);
  EXPECT_EQ(run("compute --s 2.5 --a 1 --method recurrence").code, 2);
  EXPECT_EQ(run("staff --epsilon 1 --mode beta").code, 2);
  EXPECT_EQ(run("staff --epsilon 0.5").code, 2);
  EXPECT_EQ(run("simulate --n 2 --lambda 3").code, 2);
  EXPECT_EQ(run("sweep --regime hw --beta 0").code, 2);
  EXPECT_EQ(run("--rel-tol 0 compute --s 5 --a 4").code, 2);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("compute --s 5").code, 2);
  EXPECT_EQ(run("compute --s 5 --a 4 --method magic").code, 2);
  EXPECT_EQ(run("compute --s five --a 4").code, 2);
}

TEST(Cli, HelpExitsZero) {
  const auto r = run("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("compute"), std::string::npos);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

TEST(Cli, NumericalFailureExitsThree) {
  const auto r = run("--max-refinements 1 --rel-tol 1e-16 compute --s 2.5 --a 1.5 --method quadrature", true);
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("numerical error"), std::string::npos);
}

TEST(Cli, Staff) {
  EXPECT_EQ(run("staff --a 4 --epsilon 0.6").out, "a,epsilon,servers\n4,0.59999999999999998,5\n");
  EXPECT_EQ(run("staff --a 4 --epsilon 0.5").out, "a,epsilon,servers\n4,0.5,6\n");
  const auto real = run("staff --a 4 --epsilon 0.5 --mode real");
  EXPECT_EQ(real.code, 0);
  EXPECT_NE(real.out.find("4,0.5,5.16226"), std::string::npos);
  const auto beta = run("staff --epsilon 0.5 --mode beta --a 100");
  EXPECT_EQ(beta.code, 0);
  EXPECT_NE(beta.out.find("epsilon,beta,c_star,a,servers\n0.5,0.5060544689891"), std::string::npos);
}

TEST(Cli, VerifyPasses) {
  const auto r = run("verify --suite order");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, VerifyFailureExitsOne) {
  const auto r = run("--max-refinements 1 verify --suite identities");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, SimulateIsDeterministic) {
  const auto first = run("simulate --n 5 --lambda 4 --seed 42 --arrivals 100000");
  const auto second = run("simulate --n 5 --lambda 4 --seed 42 --arrivals 100000");
  EXPECT_EQ(first.code, 0);
  EXPECT_EQ(first.out, second.out);
  EXPECT_NE(first.out.find("n,lambda,mu,seed,warmup,arrivals,p_wait,ci_halfwidth,batches,analytic,z\n"
                           "5,4,1,42,250,100000,"),
            std::string::npos);
  EXPECT_NE(run("simulate --n 5 --lambda 4 --seed 43 --arrivals 100000").out, first.out);
}

TEST(Cli, SweepCsvToStdout) {
  const auto r = run("sweep --regime hw --beta 1 --from 1 --to 100 --points 5 --log-x");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("a,s,c,c_star,gap\n1,2,0.333333333333333", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6);
}

TEST(Cli, InverseSweepClampsAndWarns) {
  const auto r = run("sweep --regime inverse --beta 2 --from 3 --to 10 --points 3", true);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("warning"), std::string::npos);
  EXPECT_EQ(r.out.find(",error"), std::string::npos);
}

TEST_F(ScratchDir, SweepBothWritesFiles) {
  const auto stem = (dir_ / "fig").string();
  EXPECT_EQ(run("sweep --regime inverse --beta 3 --format both --out " + stem).code, 0);
  const auto svg = slurp(dir_ / "fig.svg");
  const auto csv = slurp(dir_ / "fig.csv");
  EXPECT_EQ(hwstaff::testing::xml_problem(svg), "");
  EXPECT_EQ(csv.rfind("s,a,c\n", 0), 0u);
  EXPECT_EQ(run("sweep --regime inverse --beta 3 --format both").code, 2);
}

TEST_F(ScratchDir, UnwritableOutputExitsTwo) {
  EXPECT_EQ(run("sweep --regime hw --beta 1 --out " + (dir_ / "missing" / "x.csv").string()).code, 2);
}

TEST_F(ScratchDir, ConfigFilePrecedence) {
  const auto conf = dir_ / "q.conf";
  std::ofstream(conf) << "max_refinements = 1\n";
  // the config starves the quadrature so the identity suite fails ...
  EXPECT_EQ(run("--config " + conf.string() + " verify --suite identities").code, 1);
  // ... the environment variable is the fallback path ...
  EXPECT_EQ(run("verify --suite identities", false, "HW_STAFFING_CONFIG=" + conf.string()).code, 1);
  // ... and an explicit flag wins over the file.
  EXPECT_EQ(run("--config " + conf.string() + " --max-refinements 60 verify --suite identities").code, 0);

  std::ofstream(conf) << "colour = blue\n";
  EXPECT_EQ(run("--config " + conf.string() + " compute --s 5 --a 4").code, 2);
  EXPECT_EQ(run("--config " + (dir_ / "absent.conf").string() + " compute --s 5 --a 4").code, 2);
}

}  // namespace
