// matbrane: spectrum, identity, condensation and recombination-curve reports.
//
//   matbrane spectrum   [--theta pi/3] [--z2 1] [--R 1] [--N 24] ...
//   matbrane identities [--seed 42] [--dim 6]
//   matbrane condense
//   matbrane curve      [--x0-min -3] [--x0-max 3] [--points 101] --out curve.csv
//
// Settings are layered: built-in defaults, then the config file (--config, or
// the path in $MATBRANE_CONFIG), then command-line flags.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "matbrane/commands.hpp"
#include "matbrane/config.hpp"

int main(int argc, char** argv)
{
  using namespace matbrane;

  CLI::App app{"Fluctuation spectrum and tachyon condensation of intersecting noncommutative branes"};
  app.require_subcommand(1);

  std::optional<std::string> config_path, theta, z2, R, N, seed, out, format, k, n_max, dim, instances, x0_min,
      x0_max, points, angle_guard;
  std::vector<std::string> tolerances;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Flat key = value config file");
    sub->add_option("--theta", theta, "Intersection angle in radians (accepts pi/3 style)");
    sub->add_option("--z2", z2, "Flux density z^2");
    sub->add_option("--R", R, "Tension scale R");
    sub->add_option("--N", N, "Fock truncation per block");
    sub->add_option("--seed", seed, "Random seed for identity checks");
    sub->add_option("--out", out, "Write the report to this path instead of stdout");
    sub->add_option("--format", format, "delimited | structured");
    sub->add_option("--k,--margin", k, "Trust margin: number of top Fock levels");
    sub->add_option("--n-max", n_max, "Highest level in the closed-form tables");
    sub->add_option("--dim", dim, "Block dimension for the quartic identity checks");
    sub->add_option("--instances", instances, "Number of random expansion instances");
    sub->add_option("--angle-guard", angle_guard, "Distance kept from theta = pi/2");
    sub->add_option("--x0-min", x0_min, "Curve grid start");
    sub->add_option("--x0-max", x0_max, "Curve grid end");
    sub->add_option("--points", points, "Curve grid size");
    sub->add_option("--tol", tolerances, "Tolerance override name=value (repeatable)");
  };

  for (const char* name : {"spectrum", "identities", "condense", "curve"}) {
    auto* sub = app.add_subcommand(name);
    add_common(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_invalid_input;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  RunConfig cfg;
  try {
    if (!config_path) {
      if (const char* env = std::getenv(config_env_var); env != nullptr && *env != '\0') config_path = env;
    }
    if (config_path) apply_config_file(cfg, *config_path);

    const std::vector<std::pair<const char*, const std::optional<std::string>*>> overrides{
        {"theta", &theta},     {"z2", &z2},         {"R", &R},         {"N", &N},
        {"seed", &seed},       {"out", &out},       {"format", &format}, {"margin_k", &k},
        {"n_max", &n_max},     {"dim", &dim},       {"instances", &instances}, {"angle_guard", &angle_guard},
        {"x0_min", &x0_min},   {"x0_max", &x0_max}, {"points", &points}};
    for (const auto& [key, value] : overrides)
      if (*value) apply_setting(cfg, key, **value);
    for (const auto& item : tolerances) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("--tol expects name=value, got '" + item + "'");
      apply_setting(cfg, "tol." + item.substr(0, eq), item.substr(eq + 1));
    }
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return exit_invalid_input;
  }

  return run_command(command, cfg, std::cout, std::cerr);
}
