#include "matbrane/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

namespace matbrane {

RunConfig::RunConfig()
    : theta(std::numbers::pi / 3),
      tolerances{{"spectrum", 1e-6},   {"trust", 1e-6},         {"route", 1e-10},
                 {"identity", 1e-10},  {"exact", 1e-13},        {"minimum", 1e-8},
                 {"stationarity", 1e-12}, {"eigen2x2", 1e-12}, {"hyperbola", 1e-10}}
{
}

double RunConfig::tol(const std::string& name) const
{
  const auto it = tolerances.find(name);
  if (it == tolerances.end())
    throw ConfigError("unknown tolerance '" + name + "'");
  return it->second;
}

namespace {

std::string trim(const std::string& s)
{
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text)
{
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': not a number: '" + text + "'");
  }
  if (used != text.size())
    throw ConfigError("'" + key + "': trailing characters in '" + text + "'");
  return v;
}

long long parse_integer(const std::string& key, const std::string& text)
{
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': not an integer: '" + text + "'");
  }
  if (used != text.size())
    throw ConfigError("'" + key + "': trailing characters in '" + text + "'");
  return v;
}

int parse_int(const std::string& key, const std::string& text)
{
  const auto v = parse_integer(key, text);
  if (v < -1000000000LL || v > 1000000000LL)
    throw ConfigError("'" + key + "': out of range");
  return static_cast<int>(v);
}

}  // namespace

double parse_angle(const std::string& raw)
{
  std::string text;
  std::remove_copy_if(raw.begin(), raw.end(), std::back_inserter(text),
                      [](unsigned char ch) { return std::isspace(ch); });
  const auto pos = text.find("pi");
  if (pos == std::string::npos) return parse_double("theta", text);

  double factor = 1.0;
  std::string head = text.substr(0, pos);
  if (!head.empty() && head.back() == '*') head.pop_back();
  if (!head.empty()) factor = parse_double("theta", head);

  std::string tail = text.substr(pos + 2);
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/')
      throw ConfigError("'theta': expected '/' after pi in '" + raw + "'");
    divisor = parse_double("theta", tail.substr(1));
    if (divisor == 0.0) throw ConfigError("'theta': division by zero in '" + raw + "'");
  }
  return factor * std::numbers::pi / divisor;
}

OutputFormat parse_format(const std::string& text)
{
  if (text == "delimited" || text == "csv") return OutputFormat::delimited;
  if (text == "structured" || text == "json") return OutputFormat::structured;
  throw ConfigError("format must be 'delimited' or 'structured', got '" + text + "'");
}

const char* to_string(OutputFormat f) { return f == OutputFormat::delimited ? "delimited" : "structured"; }

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& raw_value)
{
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "theta") cfg.theta = parse_angle(value);
  else if (key == "z2") cfg.z2 = parse_double(key, value);
  else if (key == "R") cfg.R = parse_double(key, value);
  else if (key == "N") cfg.N = parse_int(key, value);
  else if (key == "margin_k" || key == "k") cfg.margin_k = parse_int(key, value);
  else if (key == "n_max") cfg.n_max = parse_int(key, value);
  else if (key == "seed") {
    const auto v = parse_integer(key, value);
    if (v < 0) throw ConfigError("'seed' must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(v);
  }
  else if (key == "dim") cfg.dim = parse_int(key, value);
  else if (key == "instances") cfg.instances = parse_int(key, value);
  else if (key == "angle_guard") cfg.angle_guard = parse_double(key, value);
  else if (key == "x0_min") cfg.x0_min = parse_double(key, value);
  else if (key == "x0_max") cfg.x0_max = parse_double(key, value);
  else if (key == "points") cfg.points = parse_int(key, value);
  else if (key == "format") cfg.format = parse_format(value);
  else if (key == "out") cfg.out_path = value;
  else if (key.rfind("tol.", 0) == 0) {
    const auto name = key.substr(4);
    if (!cfg.tolerances.count(name)) throw ConfigError("unknown tolerance '" + name + "'");
    cfg.tolerances[name] = parse_double(key, value);
  }
  else throw ConfigError("unknown configuration key '" + key + "'");
}

void apply_config_stream(RunConfig& cfg, std::istream& in, const std::string& origin)
{
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    try {
      apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  apply_config_stream(cfg, in, path);
}

void validate(const RunConfig& cfg)
{
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!(cfg.angle_guard > 0.0) || !(cfg.angle_guard < std::numbers::pi / 2)) fail("angle_guard must be in (0, pi/2)");
  if (!std::isfinite(cfg.theta) || cfg.theta < 0.0 || cfg.theta > std::numbers::pi / 2 - cfg.angle_guard)
    fail("theta must lie in [0, pi/2 - angle_guard]");
  if (!(cfg.z2 > 0.0) || !std::isfinite(cfg.z2)) fail("z2 must be positive");
  if (!(cfg.R > 0.0) || !std::isfinite(cfg.R)) fail("R must be positive");
  if (cfg.N < 4) fail("N must be >= 4, got " + std::to_string(cfg.N));
  if (cfg.N > 400) fail("N must be <= 400 (dense 3N x 3N eigensolve)");
  if (cfg.margin_k < 1 || cfg.margin_k >= cfg.N) fail("margin_k must satisfy 1 <= k < N");
  if (cfg.n_max < 0) fail("n_max must be nonnegative");
  if (cfg.dim < 1) fail("dim must be >= 1");
  if (cfg.instances < 1) fail("instances must be >= 1");
  if (cfg.points < 2) fail("points must be >= 2");
  if (!(cfg.x0_min < cfg.x0_max) || !std::isfinite(cfg.x0_min) || !std::isfinite(cfg.x0_max))
    fail("x0 grid requires finite x0_min < x0_max");
  for (const auto& [name, value] : cfg.tolerances)
    if (!(value > 0.0) || !std::isfinite(value)) fail("tolerance '" + name + "' must be strictly positive");
}

}  // namespace matbrane
