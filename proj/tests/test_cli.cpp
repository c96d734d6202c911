#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fracdg/cli.hpp"

using namespace fracdg;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "fracdg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::string header_of(const std::string& s) {
  std::string h;
  for (const auto& l : lines(s))
    if (!l.empty() && l[0] == '#') h += l + "\n";
  return h;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST(Cli, VersionAndHelp) {
  const CliRun v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(std::string(kVersion)), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, ValidationErrorsExitWithTwo) {
  EXPECT_EQ(run({"hcoeffs", "--lbar", "-1"}).code, 2);
  EXPECT_EQ(run({"hcoeffs", "--alpha", "1.5"}).code, 2);
  EXPECT_EQ(run({"radau", "--r", "0"}).code, 2);
  EXPECT_EQ(run({"ode", "--mesh", "spiral"}).code, 2);
  EXPECT_EQ(run({"ode", "--alpha", "0.7"}).code, 2);
  EXPECT_EQ(run({"pde", "--mesh", "graded", "--q", "-1"}).code, 2);
  EXPECT_EQ(run({"refsoln", "--what", "heat"}).code, 2);
  EXPECT_EQ(run({"radau", "--bogus", "1"}).code, 2);
  EXPECT_EQ(run({"nosuch"}).code, 2);
}

TEST(Cli, HeaderCarriesFullConfig) {
  const CliRun r = run({"hcoeffs", "--lbar", "0,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  EXPECT_EQ(ls[0], "# version=" + std::string(kVersion));
  EXPECT_EQ(ls[1], "# command=hcoeffs");
  for (const char* key : {"# alpha=", "# r=4", "# lbar=0,2", "# decay=false", "# atol="})
    EXPECT_NE(r.out.find(key), std::string::npos) << key;
}

TEST(Cli, HcoeffsPrintsReferenceEntries) {
  const CliRun r = run({"hcoeffs", "--lbar", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<std::string> body;
  for (const auto& l : lines(r.out))
    if (l[0] != '#') body.push_back(l);
  ASSERT_EQ(body.size(), 17u);
  EXPECT_EQ(body[0], "lbar,i,j,H");
  std::istringstream row(body[1]);
  std::string lbar, i, j, h;
  std::getline(row, lbar, ',');
  std::getline(row, i, ',');
  std::getline(row, j, ',');
  std::getline(row, h, ',');
  EXPECT_EQ(lbar, "1");
  EXPECT_EQ(i, "1");
  EXPECT_EQ(j, "1");
  EXPECT_NEAR(std::stod(h), -0.34623, 5e-6);
}

TEST(Cli, RadauPoints) {
  const CliRun r = run({"radau", "--r", "1"});
  ASSERT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  EXPECT_EQ(ls[ls.size() - 3], "j,tau");
  EXPECT_EQ(std::stod(ls[ls.size() - 2].substr(2)), -1.0);
  EXPECT_EQ(std::stod(ls.back().substr(2)), 1.0);
}

TEST(Cli, DeterministicOutput) {
  const std::vector<std::string> args{"ode", "--N", "8,16", "--table", "recon", "--mesh", "graded", "--q", "1,2"};
  const CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, HeaderReplaysAsConfig) {
  const CliRun a = run({"ode", "--N", "8,16", "--r", "2", "--lambda", "1.25"});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto cfg = temp_file("fracdg_cli_replay.cfg", header_of(a.out));
  const CliRun b = run({"--config", cfg.string()});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(a.out, b.out);
  // Flags win over file entries.
  const CliRun c = run({"--config", cfg.string(), "ode", "--r", "3"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("# r=3"), std::string::npos);
  EXPECT_NE(c.out.find("# lambda=1.25"), std::string::npos);
  std::filesystem::remove(cfg);
}

TEST(Cli, ConfigRejectsUnknownKeys) {
  const auto cfg = temp_file("fracdg_cli_bad.cfg", "command=radau\nwidth=3\n");
  EXPECT_EQ(run({"--config", cfg.string()}).code, 2);
  std::filesystem::remove(cfg);
  EXPECT_EQ(run({"--config", "/nonexistent/fracdg.cfg", "radau"}).code, 2);
}

TEST(Cli, OdeErrorTableColumns) {
  const CliRun r = run({"ode", "--N", "8,16"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::vector<std::string> body;
  for (const auto& l : lines(r.out))
    if (l[0] != '#') body.push_back(l);
  ASSERT_EQ(body.size(), 3u);
  EXPECT_EQ(body[0].substr(0, 4), "N,q,");
  EXPECT_NE(body[0].find(",E0,"), std::string::npos);
}

TEST(Cli, RefsolnResolvesOrder) {
  const CliRun r = run({"refsoln", "--what", "ode", "--t", "0,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# alpha=0.5"), std::string::npos);
  const CliRun p = run({"refsoln", "--what", "pde", "--t", "0.5", "--x", "0,1"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_NE(p.out.find("# alpha=0.59999999999999998"), std::string::npos);
}

TEST(Cli, WritesOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "fracdg_cli_out.csv";
  const CliRun r = run({"-o", path.string(), "radau", "--r", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), run({"radau", "--r", "2"}).out);
  std::filesystem::remove(path);
}
