#pragma once

#include <string>
#include <vector>

#include "moyalkit/cumulants.hpp"
#include "moyalkit/runner/config.hpp"
#include "moyalkit/runner/io.hpp"

namespace moyalkit::runner {

/// One acceptance check. `measured` is the error quantity compared against
/// `tolerance` with `relation`; raw values go to `detail`.
struct Check {
  int criterion;
  std::string name;
  double measured;
  std::string relation;  // "<=", "<", ">=" or "=="
  double tolerance;
  bool passed;
  std::string detail;
};

struct VerificationReport {
  std::vector<Check> checks;
  /// Per-(preset, hbar) Heisenberg comparison, reported without a verdict.
  CsvTable heisenberg;
  std::vector<CumulantReport> cumulants;

  bool passed() const;
  CsvTable table() const;
};

inline constexpr int kCriterionCount = 10;
const char* criterion_title(int criterion);

/// Runs every acceptance check at the configured grid and presets. Numerical
/// errors inside a check are caught and recorded as failures.
VerificationReport verify(const ScenarioConfig& config);

CsvTable cumulant_table(const CumulantReport& r);

}  // namespace moyalkit::runner
