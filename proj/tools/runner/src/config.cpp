#include "moyalkit/runner/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <type_traits>

#include "moyalkit/states.hpp"

namespace moyalkit::runner {
namespace {

using nlohmann::json;

// Reads one JSON object, remembering which keys were consumed so leftovers
// can be reported.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(display(), "expected an object");
  }

  std::string child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void real(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(child(key), "expected a number");
      out = v->get<double>();
      if (!std::isfinite(out)) throw ConfigError(child(key), "must be finite");
    }
  }

  template <typename Int>
  void integer(const std::string& key, Int& out) {
    if (const json* v = find(key)) {
      if (v->is_number_unsigned()) {
        const auto u = v->get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<Int>::max())) {
          throw ConfigError(child(key), "out of range");
        }
        out = static_cast<Int>(u);
      } else if (v->is_number_integer()) {
        const auto s = v->get<std::int64_t>();
        if constexpr (std::is_unsigned_v<Int>) {
          throw ConfigError(child(key), "must be nonnegative");
        } else {
          if (s < std::numeric_limits<Int>::min() || s > std::numeric_limits<Int>::max()) {
            throw ConfigError(child(key), "out of range");
          }
          out = static_cast<Int>(s);
        }
      } else {
        throw ConfigError(child(key), "expected an integer");
      }
    }
  }

  void string(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(child(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      if (!seen_.contains(key)) throw ConfigError(child(key), "unknown key");
    }
  }

 private:
  std::string display() const { return path_.empty() ? "<root>" : path_; }

  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require(bool ok, const std::string& path, const std::string& what) {
  if (!ok) throw ConfigError(path, what);
}

}  // namespace

ScenarioConfig parse_config(const json& doc) {
  ScenarioConfig c;
  ObjectReader root(doc, "");
  root.real("hbar", c.hbar);
  root.real("mass", c.mass);
  root.real("epsilon", c.epsilon);
  if (const json* g = root.find("grid")) {
    ObjectReader r(*g, "grid");
    r.integer("n2", c.grid.n2);
    r.integer("n3", c.grid.n3);
    r.real("half_width", c.grid.half_width);
    r.finish();
  }
  if (const json* p = root.find("potential")) {
    ObjectReader r(*p, "potential");
    r.string("kind", c.potential.kind);
    r.real("omega", c.potential.omega);
    r.real("a2", c.potential.a2);
    r.real("a4", c.potential.a4);
    r.finish();
  }
  if (const json* p = root.find("rho_preset")) {
    ObjectReader r(*p, "rho_preset");
    r.real("mean", c.rho_preset.mean);
    r.real("sigma", c.rho_preset.sigma);
    r.finish();
  }
  if (const json* p = root.find("wigner_preset")) {
    ObjectReader r(*p, "wigner_preset");
    r.real("p0", c.wigner_preset.p0);
    r.real("r0", c.wigner_preset.r0);
    r.real("sigma_p", c.wigner_preset.sigma_p);
    r.real("sigma_r", c.wigner_preset.sigma_r);
    r.finish();
  }
  if (const json* e = root.find("evolution")) {
    ObjectReader r(*e, "evolution");
    r.real("dt", c.evolution.dt);
    r.integer("steps", c.evolution.steps);
    r.integer("snapshot_every", c.evolution.snapshot_every);
    r.string("method", c.evolution.method);
    r.finish();
  }
  root.string("outputs", c.outputs);
  root.integer("seed", c.seed);
  root.finish();
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", "cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

void validate(const ScenarioConfig& c) {
  require(c.hbar >= 0.0, "hbar", "must be >= 0");
  require(c.mass > 0.0, "mass", "must be > 0");
  require(is_pow2(c.grid.n2) && c.grid.n2 >= 16, "grid.n2", "must be a power of two >= 16");
  require(is_pow2(c.grid.n3) && c.grid.n3 >= 16, "grid.n3", "must be a power of two >= 16");
  require(c.grid.n3 <= c.grid.n2, "grid.n3", "must not exceed grid.n2");
  require(c.grid.half_width > 0.0, "grid.half_width", "must be > 0");

  const auto& k = c.potential.kind;
  require(k == "free" || k == "harmonic" || k == "quartic" || k == "from_density",
          "potential.kind", "must be one of free, harmonic, quartic, from_density");
  if (k == "harmonic") require(c.potential.omega > 0.0, "potential.omega", "must be > 0");
  if (k == "quartic") require(c.potential.a4 > 0.0, "potential.a4", "must be > 0");

  const double L = c.grid.half_width;
  require(c.rho_preset.sigma > 0.0, "rho_preset.sigma", "must be > 0");
  require(std::abs(c.rho_preset.mean) + 8.0 * c.rho_preset.sigma <= L, "rho_preset",
          "|mean| + 8 sigma must fit inside grid.half_width");
  const auto& w = c.wigner_preset;
  require(w.sigma_p > 0.0, "wigner_preset.sigma_p", "must be > 0");
  require(w.sigma_r > 0.0, "wigner_preset.sigma_r", "must be > 0");
  require(std::abs(w.p0) + 8.0 * w.sigma_p <= L, "wigner_preset.p0",
          "|p0| + 8 sigma_p must fit inside grid.half_width");
  require(std::abs(w.r0) + 8.0 * w.sigma_r <= L, "wigner_preset.r0",
          "|r0| + 8 sigma_r must fit inside grid.half_width");

  require(c.evolution.dt > 0.0, "evolution.dt", "must be > 0");
  require(c.evolution.steps >= 0, "evolution.steps", "must be >= 0");
  require(c.evolution.snapshot_every >= 1, "evolution.snapshot_every", "must be >= 1");
  require(c.evolution.method == "spectral" || c.evolution.method == "series",
          "evolution.method", "must be spectral or series");
  require(!c.outputs.empty(), "outputs", "must not be empty");
}

json to_json(const ScenarioConfig& c) {
  json j;
  j["hbar"] = c.hbar;
  j["mass"] = c.mass;
  j["epsilon"] = c.epsilon;
  j["grid"] = {{"n2", c.grid.n2}, {"n3", c.grid.n3}, {"half_width", c.grid.half_width}};
  j["potential"] = {{"kind", c.potential.kind},
                    {"omega", c.potential.omega},
                    {"a2", c.potential.a2},
                    {"a4", c.potential.a4}};
  j["rho_preset"] = {{"mean", c.rho_preset.mean}, {"sigma", c.rho_preset.sigma}};
  j["wigner_preset"] = {{"p0", c.wigner_preset.p0},
                        {"r0", c.wigner_preset.r0},
                        {"sigma_p", c.wigner_preset.sigma_p},
                        {"sigma_r", c.wigner_preset.sigma_r}};
  j["evolution"] = {{"dt", c.evolution.dt},
                    {"steps", c.evolution.steps},
                    {"snapshot_every", c.evolution.snapshot_every},
                    {"method", c.evolution.method}};
  j["outputs"] = c.outputs;
  j["seed"] = c.seed;
  return j;
}

std::string describe_keys() {
  std::ostringstream o;
  o << "Config keys (JSON; every key optional, unknown keys rejected):\n"
       "  hbar                     1        reduced Planck constant, >= 0\n"
       "  mass                     1        particle mass, > 0\n"
       "  epsilon                  1        contact coupling; U = epsilon * rho for from_density\n"
       "  grid.n2                  128      points per axis for (p, r) fields, power of two\n"
       "  grid.n3                  64       points per axis for (R, p, r) fields, <= n2\n"
       "  grid.half_width          8        box is [-half_width, half_width) on every axis\n"
       "  potential.kind           quartic  free | harmonic | quartic | from_density\n"
       "  potential.omega          1        harmonic: U = m omega^2 r^2 / 2\n"
       "  potential.a2             0.5      quartic: U = a2 r^2 + a4 r^4\n"
       "  potential.a4             0.1\n"
       "  rho_preset.mean          0        Gaussian virtual density rho(R)\n"
       "  rho_preset.sigma         1\n"
       "  wigner_preset.p0         0        Gaussian Wigner function W(p, r)\n"
       "  wigner_preset.r0         0\n"
       "  wigner_preset.sigma_p    0.7071\n"
       "  wigner_preset.sigma_r    0.7071\n"
       "  evolution.dt             0.001    split-step time step\n"
       "  evolution.steps          1000\n"
       "  evolution.snapshot_every 100\n"
       "  evolution.method         spectral spectral | series (potential kick)\n"
       "  outputs                  moyalkit-out  output directory\n"
       "  seed                     0        unsigned 64-bit seed\n";
  return o.str();
}

Potential make_potential(const ScenarioConfig& c, const Grid1D& grid) {
  const auto& k = c.potential.kind;
  if (k == "free") return Potential::free_particle();
  if (k == "harmonic") return Potential::harmonic(c.potential.omega);
  if (k == "quartic") return Potential::quartic(c.potential.a2, c.potential.a4);
  const VirtualDensity rho = gaussian_density(grid, c.rho_preset.mean, c.rho_preset.sigma);
  return Potential::from_density(rho, c.epsilon);
}

KickMethod kick_method(const ScenarioConfig& c) {
  return c.evolution.method == "series" ? KickMethod::Series : KickMethod::SpectralKernel;
}

}  // namespace moyalkit::runner
