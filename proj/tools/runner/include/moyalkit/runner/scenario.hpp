#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "moyalkit/runner/config.hpp"

namespace moyalkit::runner {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitConfigError = 2,
  kExitRuntimeGuard = 3,
};

enum class Command { Simulate, Joint, Cumulants, Verify };

std::optional<Command> parse_command(const std::string& name);
const char* command_name(Command c);

/// Validates the config, runs one command into config.outputs and writes
/// manifest.json last. Progress and errors go to `log`. Returns the exit code.
int run_command(const ScenarioConfig& config, Command command, std::ostream& log);

}  // namespace moyalkit::runner
