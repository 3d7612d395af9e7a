#include "moyalkit/runner/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "moyalkit/cumulants.hpp"
#include "moyalkit/runner/io.hpp"
#include "moyalkit/runner/verify.hpp"

#ifndef MOYALKIT_VERSION
#define MOYALKIT_VERSION "unknown"
#endif

namespace moyalkit::runner {
namespace {

using nlohmann::json;

constexpr std::size_t kSampleCount = 200'000;

const std::vector<std::string> kJointAxes{"R", "p", "r"};
const std::vector<std::string> kWignerAxes{"p", "r"};

std::string snapshot_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%05zu", k);
  return buf;
}

void simulate(const ScenarioConfig& c, OutputDir& out) {
  const Grid1D g = make_grid(c.grid.n2, c.grid.half_width);
  const auto& w = c.wigner_preset;
  const WignerDistribution W0 = gaussian_wigner(g, g, w.p0, w.r0, w.sigma_p, w.sigma_r);
  const Potential U = make_potential(c, g);

  EvolutionParams p;
  p.mass = c.mass;
  p.hbar = c.hbar;
  p.dt = c.evolution.dt;
  p.steps = c.evolution.steps;
  p.snapshot_every = c.evolution.snapshot_every;
  p.method = kick_method(c);

  CsvTable log;
  log.header = {"snapshot", "time", "total_probability", "mean_energy"};
  std::size_t k = 0;
  // Snapshots go to disk as they arrive so an aborted run keeps them.
  const auto flush_log = [&] { out.write_csv("conserved.csv", log); };
  try {
    propagate(W0, U, p, [&](const Snapshot& s, const ConservedRecord& r) {
      out.write_array(snapshot_name(k), s.W.field(), kWignerAxes);
      log.add({std::to_string(k), format_csv_number(r.time), format_csv_number(r.total_probability),
               format_csv_number(r.mean_energy)});
      ++k;
    });
  } catch (...) {
    flush_log();
    throw;
  }
  flush_log();
}

void joint(const ScenarioConfig& c, OutputDir& out) {
  const Grid1D g = make_grid(c.grid.n3, c.grid.half_width);
  const auto& w = c.wigner_preset;
  const VirtualDensity rho = gaussian_density(g, c.rho_preset.mean, c.rho_preset.sigma);
  const WignerDistribution W = gaussian_wigner(g, g, w.p0, w.r0, w.sigma_p, w.sigma_r);

  CsvTable res;
  res.header = {"builder", "quantity", "linf"};
  const auto record = [&](const char* builder, const JointDistribution& F) {
    res.add({builder, "marginal_over_R_vs_W",
             format_csv_number(linf_distance(marginal_over_R(F).field(), W.field()))});
    res.add({builder, "marginal_over_pr_vs_rho",
             format_csv_number(linf_distance(marginal_over_pr(F).field(), rho.field()))});
  };
  try {
    const JointDistribution spectral = quantum_joint_spectral(rho, W, c.hbar);
    out.write_array("joint_spectral", spectral.field(), kJointAxes);
    record("spectral", spectral);
    const JointDistribution series = quantum_joint_series(rho, W, c.hbar);
    out.write_array("joint_series", series.field(), kJointAxes);
    record("series", series);
    res.add({"both", "series_vs_spectral",
             format_csv_number(linf_distance(series.field(), spectral.field()))});
  } catch (...) {
    out.write_csv("residuals.csv", res);
    throw;
  }
  out.write_csv("residuals.csv", res);
}

void cumulants(const ScenarioConfig& c, OutputDir& out) {
  const Grid1D g = make_grid(c.grid.n3, c.grid.half_width);
  const auto& w = c.wigner_preset;
  const VirtualDensity rho = gaussian_density(g, c.rho_preset.mean, c.rho_preset.sigma);
  const WignerDistribution W = gaussian_wigner(g, g, w.p0, w.r0, w.sigma_p, w.sigma_r);
  CsvTable t = cumulant_table(cumulant_report(rho, W, c.hbar));

  // Monte-Carlo cross-check from the seed; only defined where F >= 0.
  double sampled = std::numeric_limits<double>::quiet_NaN();
  try {
    const auto s = sample_joint(quantum_joint_spectral(rho, W, c.hbar), kSampleCount, c.seed);
    double r2p2 = 0.0, r2 = 0.0, p2 = 0.0;
    for (const auto& v : s) {
      r2p2 += v[0] * v[0] * v[1] * v[1];
      r2 += v[0] * v[0];
      p2 += v[1] * v[1];
    }
    const double n = static_cast<double>(s.size());
    sampled = r2p2 / n - (r2 / n) * (p2 / n);
  } catch (const SignedDensity&) {
  }
  t.add({"kappa22_sampled", format_csv_number(sampled)});
  t.add({"sample_count", std::to_string(kSampleCount)});
  out.write_csv("cumulants.csv", t);
}

bool verify_into(const ScenarioConfig& c, OutputDir& out, std::ostream& log) {
  const VerificationReport r = verify(c);
  out.write_csv("verification.csv", r.table());
  out.write_csv("heisenberg.csv", r.heisenberg);
  for (const CumulantReport& cr : r.cumulants) {
    out.write_csv("cumulants_hbar_" + format_value(cr.hbar) + ".csv", cumulant_table(cr));
  }
  for (const Check& ch : r.checks) {
    log << (ch.passed ? "pass " : "FAIL ") << ch.criterion << ' ' << ch.name << ' '
        << format_value(ch.measured) << ' ' << ch.relation << ' ' << format_value(ch.tolerance);
    if (!ch.detail.empty()) log << "  (" << ch.detail << ')';
    log << '\n';
  }
  log << (r.passed() ? "verification passed\n" : "verification FAILED\n");
  return r.passed();
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  if (name == "simulate") return Command::Simulate;
  if (name == "joint") return Command::Joint;
  if (name == "cumulants") return Command::Cumulants;
  if (name == "verify") return Command::Verify;
  return std::nullopt;
}

const char* command_name(Command c) {
  switch (c) {
    case Command::Simulate: return "simulate";
    case Command::Joint: return "joint";
    case Command::Cumulants: return "cumulants";
    case Command::Verify: return "verify";
  }
  return "unknown";
}

int run_command(const ScenarioConfig& config, Command command, std::ostream& log) {
  std::optional<OutputDir> out;
  try {
    validate(config);
    out = OutputDir::open(config.outputs);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  json manifest = {{"tool", "moyalkit"},
                   {"version", MOYALKIT_VERSION},
                   {"command", command_name(command)},
                   {"config", to_json(config)}};
  int code = kExitOk;
  try {
    switch (command) {
      case Command::Simulate: simulate(config, *out); break;
      case Command::Joint: joint(config, *out); break;
      case Command::Cumulants: cumulants(config, *out); break;
      case Command::Verify:
        if (!verify_into(config, *out, log)) code = kExitVerificationFailed;
        break;
    }
    manifest["status"] = "complete";
    manifest["partial"] = false;
  } catch (const Error& e) {
    log << "aborted: " << e.what() << '\n';
    manifest["status"] = "aborted";
    manifest["partial"] = true;
    manifest["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    code = kExitRuntimeGuard;
  } catch (const OutputError& e) {
    log << "output error: " << e.what() << '\n';
    manifest["status"] = "aborted";
    manifest["partial"] = true;
    manifest["error"] = {{"kind", "OutputError"}, {"message", e.what()}};
    code = kExitRuntimeGuard;
  }
  manifest["files"] = out->files();
  try {
    out->write_json("manifest.json", manifest);
  } catch (const OutputError& e) {
    log << "output error: " << e.what() << '\n';
    return kExitRuntimeGuard;
  }
  return code;
}

}  // namespace moyalkit::runner
