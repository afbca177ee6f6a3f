#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>

namespace matbrane {

enum class OutputFormat { delimited, structured };

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Everything a CLI run depends on. Defaults: R = 1, z2 = 1 (the unit
/// convention of every report), theta = pi/3, N = 24.
struct RunConfig {
  double theta;
  double z2 = 1.0;
  double R = 1.0;
  int N = 24;
  int margin_k = 4;
  int n_max = 10;
  std::uint64_t seed = 42;
  int dim = 6;
  int instances = 100;
  double angle_guard = 1e-3;
  double x0_min = -3.0;
  double x0_max = 3.0;
  int points = 101;
  std::map<std::string, double> tolerances;
  OutputFormat format = OutputFormat::delimited;
  std::string out_path;

  RunConfig();

  double tol(const std::string& name) const;
};

/// Name of the environment variable holding the default config path.
inline constexpr const char* config_env_var = "MATBRANE_CONFIG";

/// Parses "1.047", "pi", "pi/3", "2pi/5", "2*pi/5".
double parse_angle(const std::string& text);

OutputFormat parse_format(const std::string& text);
const char* to_string(OutputFormat f);

/// Sets one key. Tolerances are addressed as "tol.<name>".
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat "key = value" lines; '#' starts a comment.
void apply_config_stream(RunConfig& cfg, std::istream& in, const std::string& origin);
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Throws ConfigError when any physical parameter or tolerance is out of range.
void validate(const RunConfig& cfg);

}  // namespace matbrane
