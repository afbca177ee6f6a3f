#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "matbrane/commands.hpp"

using namespace matbrane;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string& command, const RunConfig& cfg)
{
  std::ostringstream out, err;
  const int code = run_command(command, cfg, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Commands, DefaultsPass)
{
  for (const char* name : {"spectrum", "identities", "condense", "curve"}) {
    const auto r = run(name, RunConfig{});
    EXPECT_EQ(r.code, exit_ok) << name << "\n" << r.err;
    EXPECT_NE(r.out.find("# verdict=pass"), std::string::npos) << name;
  }
}

TEST(Commands, UnknownCommandIsInvalidInput)
{
  EXPECT_EQ(run("frobnicate", RunConfig{}).code, exit_invalid_input);
}

TEST(Commands, InvalidConfigIsInvalidInput)
{
  RunConfig cfg;
  cfg.N = 2;
  EXPECT_EQ(run("spectrum", cfg).code, exit_invalid_input);
  RunConfig tol;
  tol.tolerances["spectrum"] = 0.0;
  EXPECT_EQ(run("spectrum", tol).code, exit_invalid_input);
  RunConfig pts;
  pts.points = 1;
  EXPECT_EQ(run("curve", pts).code, exit_invalid_input);
}

TEST(Commands, FailedVerificationExitsOne)
{
  RunConfig cfg;
  cfg.theta = 1.5;  // nothing survives the trust window at N = 24
  EXPECT_EQ(run("spectrum", cfg).code, exit_verification_failed);

  RunConfig strict;
  strict.tolerances["hyperbola"] = 1e-30;
  const auto r = run("curve", strict);
  EXPECT_EQ(r.code, exit_verification_failed);
  EXPECT_NE(r.out.find("# verdict=fail"), std::string::npos);
}

TEST(Commands, ReportsAreByteIdentical)
{
  for (const char* name : {"spectrum", "identities", "condense", "curve"})
    for (auto fmt : {OutputFormat::delimited, OutputFormat::structured}) {
      RunConfig cfg;
      cfg.format = fmt;
      EXPECT_EQ(run(name, cfg).out, run(name, cfg).out) << name;
    }
}

TEST(Commands, CurveRowCount)
{
  const auto r = run("curve", RunConfig{});
  std::istringstream in(r.out);
  std::string line;
  int branch_rows = 0, asymptote_rows = 0;
  while (std::getline(in, line)) {
    if (line.find(",minus,") != std::string::npos || line.find(",plus,") != std::string::npos) ++branch_rows;
    if (line.find(",asymptote_") != std::string::npos) ++asymptote_rows;
  }
  EXPECT_EQ(branch_rows, 202);
  EXPECT_EQ(asymptote_rows, 202);
}

TEST(Commands, StructuredOutputParses)
{
  RunConfig cfg;
  cfg.format = OutputFormat::structured;
  const auto doc = nlohmann::json::parse(run("condense", cfg).out);
  EXPECT_TRUE(doc.at("passed").get<bool>());
  EXPECT_NEAR(doc.at("tmin_analytic").get<double>(), 1.7724538509055159, 1e-14);
}

TEST(Commands, WritesToOutputFile)
{
  RunConfig cfg;
  cfg.out_path = ::testing::TempDir() + "matbrane_condense.csv";
  const auto r = run("condense", cfg);
  EXPECT_EQ(r.code, exit_ok);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(cfg.out_path);
  std::stringstream buf;
  buf << f.rdbuf();
  EXPECT_NE(buf.str().find("# verdict=pass"), std::string::npos);
  std::remove(cfg.out_path.c_str());
}
