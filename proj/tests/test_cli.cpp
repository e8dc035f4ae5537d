#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "mcpiso/cli.hpp"

using namespace mcpiso;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MCPISO_TEST_DATA) + "/" + name; }

std::string shell(const std::string& cmd) {
  std::string result;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return result;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) result.append(buf.data(), n);
  pclose(p);
  return result;
}

}  // namespace

TEST(Cli, Bounds) {
  const auto r = run({"bounds", "--N", "2", "--avr", "1", "--mass", "3.141592653589793"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "N,avr,mass,mcp,cd,cd_over_mcp\n"
            "2,1,3.14159265359,4.44288293816,6.28318530718,1.41421356237\n");
}

TEST(Cli, ProfileJson) {
  const auto r = run({"--format", "json", "profile", "--N", "2", "--D", "1", "--v", "0.5"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("\"a\": 0.5"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"profile\": 0.666666666667"), std::string::npos) << r.out;
}

TEST(Cli, ProfileSweep) {
  const auto r = run({"profile", "--N", "3", "--D", "2", "--v", "0.1:0.9:5"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6);
}

TEST(Cli, Sharp) {
  const auto r = run({"sharp", "--avr", "0.159154943", "--mass", "1", "--N", "2"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
}

TEST(Cli, ValidateDensity) {
  EXPECT_EQ(run({"validate-density", "--space", data("plane.json"), "--N", "2"}).code,
            cli::kExitOk);
  const auto bad = run({"validate-density", "--space", data("steep.json"), "--N", "2"});
  EXPECT_EQ(bad.code, cli::kExitCheckFailed);
  EXPECT_NE(bad.out.find("upper"), std::string::npos) << bad.out;
  EXPECT_EQ(run({"validate-density", "--space", data("exp_table.json"), "--N", "2"}).code,
            cli::kExitCheckFailed);
}

TEST(Cli, MinDimensionAndAvr) {
  const auto m = run({"min-dimension", "--space", data("steep.json")});
  EXPECT_EQ(m.code, cli::kExitOk) << m.err;
  const auto a = run({"avr", "--space", data("plane.json"), "--N", "2"});
  EXPECT_EQ(a.code, cli::kExitOk);
  EXPECT_EQ(a.out, "N,avr,certified\n2,1,true\n");
}

TEST(Cli, SearchAndLocalize) {
  const auto s = run({"search", "--space", data("sharp.json"), "--config", data("search_sharp.json")});
  EXPECT_EQ(s.code, cli::kExitOk) << s.err;
  EXPECT_NE(s.err.find("certify_bound: pass"), std::string::npos);
  const auto l = run({"localize", "--model", data("model_plane.json"), "--r", "1", "--R", "4:400:3",
                      "--log"});
  EXPECT_EQ(l.code, cli::kExitOk) << l.err;
  EXPECT_EQ(std::count(l.out.begin(), l.out.end(), '\n'), 4);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"profile", "--N", "2"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"profile", "--N", "1", "--D", "1", "--v", "0.5"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--precision", "40", "bounds", "--N", "2", "--avr", "1", "--mass", "1"}).code,
            cli::kExitUsage);
  const auto broken = run({"validate-density", "--space", data("broken.json"), "--N", "2"});
  EXPECT_EQ(broken.code, cli::kExitUsage);
  EXPECT_NE(broken.err.find("2:"), std::string::npos) << broken.err;
  EXPECT_EQ(run({"profile", "--N", "2", "--D", "1", "--v", "0.1:0.2"}).code, cli::kExitUsage);
}

TEST(Cli, ToleranceFromEnvironment) {
  ::setenv("MCP_ISO_TOL", "nonsense", 1);
  EXPECT_EQ(run({"bounds", "--N", "2", "--avr", "1", "--mass", "1"}).code, cli::kExitUsage);
  ::setenv("MCP_ISO_TOL", "1e-10", 1);
  EXPECT_EQ(run({"profile", "--N", "2", "--D", "1", "--v", "0.5"}).code, cli::kExitOk);
  ::unsetenv("MCP_ISO_TOL");
}

TEST(Cli, BinaryOutputIsByteStable) {
  const std::string cmd = std::string(MCPISO_CLI_PATH) +
                          " --format json profile --N 2.5 --D 3 --v 0.01:0.99:7 2>&1";
  const auto first = shell(cmd);
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, shell(cmd));
  EXPECT_EQ(first, run({"--format", "json", "profile", "--N", "2.5", "--D", "3", "--v",
                        "0.01:0.99:7"}).out);
}

TEST(Cli, Helpers) {
  EXPECT_EQ(cli::format_number(1.0 / 3.0, 5), "0.33333");
  EXPECT_EQ(cli::format_number(-std::numeric_limits<double>::infinity(), 5), "-inf");
  const auto s = cli::parse_sweep("1:100:3", true);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_NEAR(s[1], 10.0, 1e-12);
  EXPECT_EQ(s[2], 100.0);
  EXPECT_EQ(cli::parse_sweep("0.25", false), std::vector<double>{0.25});
}
