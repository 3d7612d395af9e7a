#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "moyalkit/dynamics.hpp"

namespace moyalkit::runner {

/// Bad or inconsistent configuration. The message starts with the key path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct GridConfig {
  std::size_t n2 = 128;
  std::size_t n3 = 64;
  double half_width = 8.0;
};

struct PotentialConfig {
  std::string kind = "quartic";  // free | harmonic | quartic | from_density
  double omega = 1.0;
  double a2 = 0.5;
  double a4 = 0.1;
};

struct RhoPreset {
  double mean = 0.0;
  double sigma = 1.0;
};

struct WignerPreset {
  double p0 = 0.0;
  double r0 = 0.0;
  double sigma_p = 0.70710678118654752;
  double sigma_r = 0.70710678118654752;
};

struct EvolutionConfig {
  double dt = 1e-3;
  int steps = 1000;
  int snapshot_every = 100;
  std::string method = "spectral";  // spectral | series
};

struct ScenarioConfig {
  double hbar = 1.0;
  double mass = 1.0;
  double epsilon = 1.0;
  GridConfig grid;
  PotentialConfig potential;
  RhoPreset rho_preset;
  WignerPreset wigner_preset;
  EvolutionConfig evolution;
  std::string outputs = "moyalkit-out";
  std::uint64_t seed = 0;
};

/// Parses a config document. Every key is optional and falls back to the
/// default scenario; unknown keys and wrong types are errors.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config(const std::string& path);

/// Range and consistency checks. Throws ConfigError naming the key.
void validate(const ScenarioConfig& config);

/// Fully resolved config, every key present.
nlohmann::json to_json(const ScenarioConfig& config);

/// Help text listing every key with its default.
std::string describe_keys();

Potential make_potential(const ScenarioConfig& config, const Grid1D& grid);
KickMethod kick_method(const ScenarioConfig& config);

}  // namespace moyalkit::runner
