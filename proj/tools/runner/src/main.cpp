// moyalkit command-line front end.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "moyalkit/runner/config.hpp"
#include "moyalkit/runner/scenario.hpp"

using namespace moyalkit::runner;

int main(int argc, char** argv) {
  CLI::App app{"moyalkit: joint virtual-particle / Wigner phase-space toolkit"};
  app.footer("\n" + describe_keys() +
             "\nExit codes: 0 ok, 1 verification failed, 2 config error, 3 runtime guard.");
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> output_dir;
  std::optional<double> hbar;
  std::optional<std::uint64_t> seed;

  for (const char* name : {"simulate", "joint", "cumulants", "verify"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file (defaults used when omitted)");
    sub->add_option("--output-dir", output_dir, "overrides outputs");
    sub->add_option("--hbar", hbar, "overrides hbar");
    sub->add_option("--seed", seed, "overrides seed");
  }
  app.get_subcommand("simulate")->description("split-step propagation of W; snapshots + conserved.csv");
  app.get_subcommand("joint")->description("both quantum joint builders + residuals.csv");
  app.get_subcommand("cumulants")->description("cumulant report of the spectral joint");
  app.get_subcommand("verify")->description("full acceptance suite; verification.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfigError;
  }

  const Command command = *parse_command(app.get_subcommands().front()->get_name());
  ScenarioConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
  if (output_dir) config.outputs = *output_dir;
  if (hbar) config.hbar = *hbar;
  if (seed) config.seed = *seed;

  return run_command(config, command, std::cerr);
}
