#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "matbrane/config.hpp"

using namespace matbrane;
using std::numbers::pi;

TEST(Config, Defaults)
{
  const RunConfig cfg;
  EXPECT_NEAR(cfg.theta, pi / 3, 1e-15);
  EXPECT_EQ(cfg.N, 24);
  EXPECT_EQ(cfg.margin_k, 4);
  EXPECT_EQ(cfg.points, 101);
  EXPECT_EQ(cfg.tol("spectrum"), 1e-6);
  EXPECT_EQ(cfg.tol("hyperbola"), 1e-10);
  EXPECT_THROW(cfg.tol("nonsense"), ConfigError);
  EXPECT_NO_THROW(validate(cfg));
}

TEST(Config, ParseAngle)
{
  EXPECT_NEAR(parse_angle("pi/3"), pi / 3, 1e-15);
  EXPECT_NEAR(parse_angle("2pi/5"), 2 * pi / 5, 1e-15);
  EXPECT_NEAR(parse_angle("2*pi/5"), 2 * pi / 5, 1e-15);
  EXPECT_NEAR(parse_angle("pi"), pi, 1e-15);
  EXPECT_EQ(parse_angle("0.5"), 0.5);
  EXPECT_THROW(parse_angle("pi/0"), ConfigError);
  EXPECT_THROW(parse_angle("abc"), ConfigError);
  EXPECT_THROW(parse_angle("1.2x"), ConfigError);
}

TEST(Config, ParseFormat)
{
  EXPECT_EQ(parse_format("structured"), OutputFormat::structured);
  EXPECT_EQ(parse_format("json"), OutputFormat::structured);
  EXPECT_EQ(parse_format("csv"), OutputFormat::delimited);
  EXPECT_THROW(parse_format("xml"), ConfigError);
}

TEST(Config, ApplySettings)
{
  RunConfig cfg;
  apply_setting(cfg, "theta", "pi/6");
  apply_setting(cfg, "N", "16");
  apply_setting(cfg, "tol.route", "1e-9");
  apply_setting(cfg, "seed", "7");
  EXPECT_NEAR(cfg.theta, pi / 6, 1e-15);
  EXPECT_EQ(cfg.N, 16);
  EXPECT_EQ(cfg.tol("route"), 1e-9);
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_THROW(apply_setting(cfg, "bogus", "1"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "tol.bogus", "1"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "N", "3.5"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "seed", "-1"), ConfigError);
}

TEST(Config, StreamWithCommentsAndLineNumbers)
{
  RunConfig cfg;
  std::istringstream in("# header\n theta = pi/4 \n\nz2=0.5 # trailing\n");
  apply_config_stream(cfg, in, "test.cfg");
  EXPECT_NEAR(cfg.theta, pi / 4, 1e-15);
  EXPECT_EQ(cfg.z2, 0.5);

  std::istringstream bad("theta = 0.1\nnot a pair\n");
  try {
    apply_config_stream(cfg, bad, "bad.cfg");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.cfg:2"), std::string::npos) << e.what();
  }
}

TEST(Config, FileRoundTrip)
{
  const std::string path = ::testing::TempDir() + "matbrane_test.cfg";
  {
    std::ofstream f(path);
    f << "N = 20\npoints = 11\nformat = structured\n";
  }
  RunConfig cfg;
  apply_config_file(cfg, path);
  EXPECT_EQ(cfg.N, 20);
  EXPECT_EQ(cfg.points, 11);
  EXPECT_EQ(cfg.format, OutputFormat::structured);
  std::remove(path.c_str());
  EXPECT_THROW(apply_config_file(cfg, path), ConfigError);
}

TEST(Config, ValidationRejectsOutOfRange)
{
  auto rejects = [](const char* key, const char* value) {
    RunConfig cfg;
    apply_setting(cfg, key, value);
    EXPECT_THROW(validate(cfg), ConfigError) << key << "=" << value;
  };
  rejects("N", "3");
  rejects("N", "1000");
  rejects("k", "24");
  rejects("k", "0");
  rejects("z2", "0");
  rejects("R", "-1");
  rejects("theta", "pi/2");
  rejects("theta", "-0.1");
  rejects("points", "1");
  rejects("tol.spectrum", "0");
  rejects("x0_min", "5");
  rejects("dim", "0");
}
