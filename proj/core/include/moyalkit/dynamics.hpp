#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "moyalkit/coupling.hpp"
#include "moyalkit/states.hpp"

namespace moyalkit {

/// Newtonian potential U(r): an analytic preset or epsilon * rho(r).
class Potential {
 public:
  enum class Kind { Free, Harmonic, Quartic, FromDensity };

  static Potential free_particle();
  /// U = m omega^2 r^2 / 2; the mass is supplied at evaluation.
  static Potential harmonic(double omega);
  /// U = a2 r^2 + a4 r^4, a4 > 0.
  static Potential quartic(double a2, double a4);
  /// U = epsilon * rho(r), sampled on rho's grid.
  static Potential from_density(const VirtualDensity& rho, double epsilon);

  Kind kind() const noexcept { return kind_; }
  double omega() const noexcept { return omega_; }
  double a2() const noexcept { return a2_; }
  double a4() const noexcept { return a4_; }
  double epsilon() const noexcept { return epsilon_; }

  /// Degree of a polynomial potential (0 for Free); nullopt for FromDensity.
  std::optional<int> polynomial_degree() const;

  /// U(r_j) on the grid. FromDensity requires grid == rho's grid.
  RealField samples(const Grid1D& grid, double mass) const;
  /// d^order U / dr^order at the grid points (analytic for presets,
  /// spectral for FromDensity).
  RealField derivative(const Grid1D& grid, int order, double mass) const;
  /// U(r_j + shift) at the grid points (analytic for presets, trigonometric
  /// interpolation for FromDensity).
  RealField shifted(const Grid1D& grid, double shift, double mass) const;

 private:
  Potential() = default;
  void require_grid(const Grid1D& grid) const;

  Kind kind_ = Kind::Free;
  double omega_ = 0.0;
  double a2_ = 0.0;
  double a4_ = 0.0;
  double epsilon_ = 0.0;
  std::optional<RealField> density_samples_;  // epsilon * rho
};

Potential potential_from_density(const VirtualDensity& rho, double epsilon);

/// -p dW/dr / m + dU/dr dW/dp.
RealField liouville_rhs(const WignerDistribution& W, const Potential& U, double mass);

/// Liouville streaming plus the Moyal series
///   sum_n (-1)^n (hbar/2)^(2n) / (2n+1)! d^(2n+1)U/dr^(2n+1) d^(2n+1)W/dp^(2n+1),
/// exact once 2n+1 exceeds the degree of a polynomial potential.
RealField moyal_rhs_series(const WignerDistribution& W, const Potential& U, double hbar,
                           double mass, TermCap n_max = kAutoTerms);

/// Resummed Moyal right-hand side: in the p-spectral variable lambda the
/// potential term multiplies W~ by (-i/hbar) [U(r + hbar lambda/2) - U(r - hbar lambda/2)].
/// Requires hbar != 0.
RealField moyal_rhs_spectral(const WignerDistribution& W, const Potential& U, double hbar,
                             double mass);

/// Kinetic balance with the contact collision term:
///   -p dW/dr / m + d/dp [epsilon dF/dR at R = r],  W = integral of F over R.
RealField collision_rhs(const JointDistribution& F, double epsilon, double mass);

enum class KickMethod { Series, SpectralKernel };

struct EvolutionParams {
  double mass = 1.0;
  double hbar = 1.0;
  double dt = 1e-3;
  int steps = 1000;
  int snapshot_every = 100;
  TermCap n_max = kAutoTerms;
  KickMethod method = KickMethod::SpectralKernel;
};

struct Snapshot {
  double time;
  WignerDistribution W;
};

struct ConservedRecord {
  double time;
  double total_probability;
  double mean_energy;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  std::vector<ConservedRecord> log;
};

/// <p^2 / 2m + U(r)> under W.
double mean_energy(const WignerDistribution& W, const Potential& U, double mass);

using SnapshotObserver = std::function<void(const Snapshot&, const ConservedRecord&)>;

/// Strang split-step integration: half streaming shear, full potential kick,
/// half streaming shear. Snapshots (and the conserved-quantity log) are taken
/// at t = 0, every snapshot_every steps, and at the final step. Throws
/// DecayGuard naming the time if a snapshot stops vanishing at the box edge.
Trajectory propagate(const WignerDistribution& W0, const Potential& U,
                     const EvolutionParams& params, const SnapshotObserver& observer = {});

/// Exact free-particle solution W0(p, r - p t / m), resampled by
/// trigonometric interpolation along r.
WignerDistribution analytic_free_evolution(const WignerDistribution& W0, double t, double mass);

}  // namespace moyalkit
