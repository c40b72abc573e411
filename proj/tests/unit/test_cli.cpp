#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "musb_cli/cli.hpp"

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "musb");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = musb::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

int count_lines(const std::string& s, const std::string& needle) {
  int n = 0;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);)
    if (line.find(needle) != std::string::npos) ++n;
  return n;
}

}  // namespace

TEST(Cli, EvalExamples) {
  auto e = run({"eval", "e_mu", "--mu", "0", "--z", "1"});
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("2.718281828"), std::string::npos);
  auto g = run({"eval", "gamma_mu", "--mu", "1", "--n", "3"});
  EXPECT_EQ(g.code, 0);
  EXPECT_NE(g.out.find("30"), std::string::npos);
  auto k = run({"eval", "macdonald_k", "--alpha", "0.5", "--x", "1"});
  EXPECT_NE(k.out.find("0.4610685"), std::string::npos);
}

TEST(Cli, EvalDomainError) {
  EXPECT_EQ(run({"eval", "macdonald_k", "--alpha", "0.5", "--x", "-1"}).code, 2);
  EXPECT_EQ(run({"eval", "no_such_function"}).code, 2);
}

TEST(Cli, TransformExamples) {
  EXPECT_NE(run({"transform", "[1]"}).out.find("[1"), std::string::npos);
  auto t1 = run({"transform", "[0,1]", "--format", "json"});
  EXPECT_EQ(t1.code, 0);
  EXPECT_NE(t1.out.find("0.7071067811865"), std::string::npos);
  auto t2 = run({"transform", "[0,0,1]", "--mu", "1", "--format", "json"});
  EXPECT_NE(t2.out.find("1.5"), std::string::npos);
  EXPECT_NE(t2.out.find("0.5"), std::string::npos);
  auto at = run({"transform", "[0,0,1]", "--mu", "1", "--at", "0.5,0.2"});
  EXPECT_EQ(at.code, 0);
}

TEST(Cli, Region) {
  auto r2 = run({"region", "--lambda", "2", "--n", "5"});
  EXPECT_EQ(r2.code, 0);
  EXPECT_EQ(r2.out.rfind("p_inv,q_inv_boundary,q_inv_cut", 0), 0u);
  EXPECT_NE(r2.out.find(",0.25\r\n"), std::string::npos);
  auto r1 = run({"region", "--lambda", "1", "--n", "3"});
  EXPECT_NE(r1.out.find(",0.5\r\n"), std::string::npos);
  EXPECT_NE(run({"region", "--lambda", "0.6666666666666666", "--n", "3"}).out.find(",0.75"),
            std::string::npos);
  EXPECT_EQ(run({"region", "--lambda", "0"}).code, 2);
}

TEST(Cli, VerifyMasses) {
  auto r = run({"verify", "masses", "--mu", "1", "--lambda", "1.5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out, "\"passed\":true"), 2);
}

TEST(Cli, VerifyLsiMatchesHirschman) {
  auto h = run({"verify", "hirschman", "--mu", "1", "--p", "4", "--q", "1"});
  auto l = run({"verify", "lsi", "--mu", "1", "--lambda", "1", "--p", "4", "--q", "1"});
  EXPECT_EQ(h.code, 0);
  EXPECT_EQ(l.code, 0);
  auto strip = [](std::string s) {
    for (std::size_t pos; (pos = s.find("log_sobolev")) != std::string::npos;) s.replace(pos, 11, "hirschman");
    return s;
  };
  EXPECT_EQ(strip(l.out), h.out);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"verify", "eq33", "--mu", "0.5"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, EnvAndConfig) {
  setenv("MUSB_MU", "1", 1);
  auto g = run({"eval", "gamma_mu", "--n", "3"});
  unsetenv("MUSB_MU");
  EXPECT_NE(g.out.find("30"), std::string::npos);
  const std::string path = testing::TempDir() + "musb_cli_test.cfg";
  {
    std::ofstream f(path);
    f << "mu=1\n";
  }
  auto c = run({"--config", path, "eval", "gamma_mu", "--n", "3"});
  EXPECT_NE(c.out.find("30"), std::string::npos);
  std::remove(path.c_str());
}

TEST(Cli, UsageAndHelp) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"verify", "bogus"}).code, 2);
  auto h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE((h.out + h.err).find("Exit codes"), std::string::npos);
}

TEST(Cli, OutFile) {
  const std::string path = testing::TempDir() + "musb_cli_out.csv";
  auto r = run({"region", "--lambda", "2", "--n", "3", "--out", path});
  EXPECT_EQ(r.code, 0);
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first.rfind("p_inv", 0), 0u);
  std::remove(path.c_str());
}

TEST(Cli, SweepSortedOutput) {
  auto r = run({"sweep", "--suite", "eq33", "--mus", "1", "0", "--jobs", "2"});
  EXPECT_EQ(r.code, 0);
  const auto a = r.out.find("\"mu\":0");
  const auto b = r.out.find("\"mu\":1");
  ASSERT_NE(a, std::string::npos);
  ASSERT_NE(b, std::string::npos);
  EXPECT_LT(a, b);
}
