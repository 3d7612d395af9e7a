#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "moyalkit/runner/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kScratch = MOYALKIT_CLI_SCRATCH;

// Runs the CLI, returning its exit status; stdout+stderr go to `log`.
int run(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string("\"") + MOYALKIT_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh(const std::string& name) {
  const fs::path d = kScratch / name;
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

fs::path write_config(const fs::path& dir, const json& doc) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << doc.dump();
  return p;
}

// Every file except the manifest, whose config echo names the directory.
std::string numeric_outputs(const fs::path& dir) {
  std::string all;
  for (const auto& f : json::parse(slurp(dir / "manifest.json"))["files"]) {
    all += f["name"].get<std::string>() + "\n" + slurp(dir / f["name"].get<std::string>());
  }
  return all;
}

std::string csv_value(const std::string& csv, const std::string& key) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ",", 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

}  // namespace

TEST_CASE("help documents every config key") {
  const fs::path d = fresh("help");
  CHECK(run("--help", d / "log") == 0);
  const std::string text = slurp(d / "log");
  for (const char* key :
       {"hbar", "mass", "epsilon", "grid.n2", "grid.n3", "grid.half_width", "potential.kind",
        "potential.omega", "potential.a2", "potential.a4", "rho_preset.mean", "rho_preset.sigma",
        "wigner_preset.p0", "wigner_preset.r0", "wigner_preset.sigma_p", "wigner_preset.sigma_r",
        "evolution.dt", "evolution.steps", "evolution.snapshot_every", "evolution.method",
        "outputs", "seed"}) {
    CAPTURE(key);
    CHECK(text.find(key) != std::string::npos);
  }
}

TEST_CASE("config errors exit 2 and name the key") {
  const fs::path d = fresh("config-errors");
  const fs::path out = d / "out";
  const std::pair<json, std::string> cases[] = {
      {{{"grid", {{"n3", 64}, {"nn2", 128}}}}, "grid.nn2"},
      {{{"hbar", "one"}}, "hbar"},
      {{{"hbar", -1.0}}, "hbar"},
      {{{"grid", {{"n2", 32}, {"n3", 64}}}}, "grid.n3"},
      {{{"grid", {{"n3", 48}}}}, "grid.n3"},
      {{{"potential", {{"kind", "cubic"}}}}, "potential.kind"},
      {{{"rho_preset", {{"sigma", 2.0}}}}, "rho_preset"},
  };
  for (const auto& [doc, path] : cases) {
    CAPTURE(doc.dump());
    const fs::path cfg = write_config(d, doc);
    CHECK(run("joint --config " + cfg.string() + " --output-dir " + out.string(), d / "log") == 2);
    CHECK(slurp(d / "log").find(path) != std::string::npos);
    CHECK_FALSE(fs::exists(out));
  }
  CHECK(run("joint --config " + (d / "missing.json").string(), d / "log") == 2);
  CHECK(run("frobnicate", d / "log") == 2);
}

TEST_CASE("unwritable output directory: exit 2, nothing written") {
  const fs::path d = fresh("unwritable");
  std::ofstream(d / "blocker") << "x";
  const fs::path out = d / "blocker" / "out";
  CHECK(run("joint --output-dir " + out.string(), d / "log") == 2);
  CHECK(slurp(d / "log").find("outputs") != std::string::npos);
  CHECK(std::distance(fs::directory_iterator(d), fs::directory_iterator()) == 2);  // blocker, log
}

TEST_CASE("joint: two arrays with checksummed sidecars, residuals, manifest") {
  const fs::path d = fresh("joint");
  const fs::path out = d / "out";
  REQUIRE(run("joint --hbar 0.5 --output-dir " + out.string(), d / "log") == 0);
  for (const char* name : {"joint_spectral", "joint_series"}) {
    CAPTURE(name);
    const json side = json::parse(slurp(out / (std::string(name) + ".json")));
    const std::string bytes = slurp(out / (std::string(name) + ".f64"));
    CHECK(bytes.size() == 64u * 64u * 64u * 8u);
    CHECK(side["sha256"] == moyalkit::runner::sha256_hex(bytes));
    CHECK(side["axis_order"] == json({"R", "p", "r"}));
    CHECK(side["byte_order"] == "little");
  }
  const std::string res = slurp(out / "residuals.csv");
  CHECK(res.rfind("builder,quantity,linf\n", 0) == 0);
  const double gap = std::stod(csv_value(res, "both,series_vs_spectral"));
  CHECK(gap < 1e-8);

  const json m = json::parse(slurp(out / "manifest.json"));
  CHECK(m["status"] == "complete");
  CHECK(m["partial"] == false);
  CHECK(m["command"] == "joint");
  CHECK(m["config"]["hbar"] == 0.5);
  CHECK(m["files"].size() == 5);
  CHECK(slurp(out / "manifest.json").find("time") == std::string::npos);
}

TEST_CASE("outputs are deterministic and reproducible from the manifest") {
  const fs::path d = fresh("determinism");
  REQUIRE(run("joint --hbar 0.5 --output-dir " + (d / "a").string(), d / "log") == 0);
  REQUIRE(run("joint --hbar 0.5 --output-dir " + (d / "b").string(), d / "log") == 0);
  CHECK(numeric_outputs(d / "a") == numeric_outputs(d / "b"));

  json echoed = json::parse(slurp(d / "a" / "manifest.json"))["config"];
  echoed["outputs"] = (d / "c").string();
  const fs::path cfg = write_config(d, echoed);
  REQUIRE(run("joint --config " + cfg.string(), d / "log") == 0);
  CHECK(numeric_outputs(d / "a") == numeric_outputs(d / "c"));
}

TEST_CASE("cumulants at hbar = 0 report kappa22 = 0") {
  const fs::path d = fresh("cumulants0");
  const fs::path out = d / "out";
  REQUIRE(run("cumulants --hbar 0 --output-dir " + out.string(), d / "log") == 0);
  const std::string csv = slurp(out / "cumulants.csv");
  CHECK(std::abs(std::stod(csv_value(csv, "kappa22"))) <= 1e-6);
  CHECK(std::stod(csv_value(csv, "quoted_kappa22")) == 0.0);
  // F is a product density here, so the seeded Monte-Carlo estimate exists.
  CHECK(std::abs(std::stod(csv_value(csv, "kappa22_sampled"))) < 0.05);
}

TEST_CASE("runtime guard violations exit 3 and flag partial outputs") {
  const fs::path d = fresh("guard");
  // Default quartic scenario: the tails of W reach the p edge near t = 0.2.
  const fs::path out = d / "sim";
  CHECK(run("simulate --output-dir " + out.string(), d / "log") == 3);
  const json m = json::parse(slurp(out / "manifest.json"));
  CHECK(m["status"] == "aborted");
  CHECK(m["partial"] == true);
  CHECK(m["error"]["kind"] == "DecayGuard");
  CHECK(fs::exists(out / "snapshot_00000.f64"));
  CHECK(fs::exists(out / "conserved.csv"));

  // hbar = 2 exhausts the joint series.
  const fs::path out2 = d / "joint";
  CHECK(run("joint --hbar 2 --output-dir " + out2.string(), d / "log") == 3);
  const json m2 = json::parse(slurp(out2 / "manifest.json"));
  CHECK(m2["error"]["kind"] == "NonConvergence");
  CHECK(fs::exists(out2 / "joint_spectral.f64"));
  CHECK_FALSE(fs::exists(out2 / "joint_series.f64"));
}

TEST_CASE("simulate writes snapshots and the conserved-quantity log") {
  const fs::path d = fresh("simulate");
  const fs::path out = d / "out";
  const fs::path cfg = write_config(
      d, {{"potential", {{"kind", "harmonic"}, {"omega", 1.0}}},
          {"grid", {{"n2", 64}, {"n3", 32}}},
          {"evolution", {{"steps", 200}, {"snapshot_every", 50}}}});
  REQUIRE(run("simulate --config " + cfg.string() + " --output-dir " + out.string(), d / "log") ==
          0);
  for (int k = 0; k <= 4; ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%05d.f64", k);
    CHECK(fs::file_size(out / name) == 64u * 64u * 8u);
  }
  std::istringstream log(slurp(out / "conserved.csv"));
  std::string line;
  int rows = -1;
  while (std::getline(log, line)) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("verify on an unresolved grid reports InsufficientSupport and exits 1") {
  const fs::path d = fresh("verify16");
  const fs::path out = d / "out";
  const fs::path cfg = write_config(d, {{"grid", {{"n2", 64}, {"n3", 16}}}});
  CHECK(run("verify --config " + cfg.string() + " --output-dir " + out.string(), d / "log") == 1);
  CHECK(slurp(out / "verification.csv").find("InsufficientSupport") != std::string::npos);
}

TEST_CASE("verify twice gives byte-identical reports") {
  const fs::path d = fresh("verify-twice");
  const fs::path cfg = write_config(d, {{"grid", {{"n2", 64}}}});
  const int a = run("verify --config " + cfg.string() + " --output-dir " + (d / "a").string(),
                    d / "log_a");
  const int b = run("verify --config " + cfg.string() + " --output-dir " + (d / "b").string(),
                    d / "log_b");
  CHECK(a == b);
  CHECK((a == 0 || a == 1));
  CHECK(numeric_outputs(d / "a") == numeric_outputs(d / "b"));
  CHECK(slurp(d / "log_a") == slurp(d / "log_b"));
}
