#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "moyalkit/field.hpp"
#include "moyalkit/grid.hpp"

namespace moyalkit {

/// Normalisation tolerance accepted by the distribution constructors.
inline constexpr double kNormTolerance = 1e-8;
inline constexpr double kJointNormTolerance = 1e-7;

/// Virtual-particle density rho(R): nonnegative, unit integral, decaying.
class VirtualDensity {
 public:
  /// Validates the samples; throws InvalidArgument or DecayGuard.
  static VirtualDensity from_samples(RealField values);

  const Grid1D& grid() const { return values_.axis(0); }
  const RealField& field() const noexcept { return values_; }
  double operator()(std::size_t j) const { return values_(j); }

 private:
  explicit VirtualDensity(RealField v) : values_(std::move(v)) {}
  RealField values_;
};

/// Real-particle Wigner function W(p, r), axis order (p, r). May be negative.
class WignerDistribution {
 public:
  static WignerDistribution from_samples(RealField values);

  const Grid1D& grid_p() const { return values_.axis(0); }
  const Grid1D& grid_r() const { return values_.axis(1); }
  const RealField& field() const noexcept { return values_; }
  double operator()(std::size_t ip, std::size_t ir) const { return values_(ip, ir); }
  double normalization() const { return integrate(values_); }

 private:
  explicit WignerDistribution(RealField v) : values_(std::move(v)) {}
  RealField values_;
};

/// Joint density F(R, p, r), axis order (R, p, r). The R and r axes are the
/// same grid so that F can be evaluated on the diagonal R = r exactly.
class JointDistribution {
 public:
  static JointDistribution from_samples(RealField values, double hbar_used);

  const Grid1D& grid_R() const { return values_.axis(0); }
  const Grid1D& grid_p() const { return values_.axis(1); }
  const Grid1D& grid_r() const { return values_.axis(2); }
  const RealField& field() const noexcept { return values_; }
  double hbar_used() const noexcept { return hbar_used_; }
  double operator()(std::size_t iR, std::size_t ip, std::size_t ir) const {
    return values_(iR, ip, ir);
  }

 private:
  JointDistribution(RealField v, double hbar) : values_(std::move(v)), hbar_used_(hbar) {}
  RealField values_;
  double hbar_used_;
};

/// Gaussian density normalised by grid quadrature. Requires
/// |mean| + 8 sigma <= half_width.
VirtualDensity gaussian_density(const Grid1D& grid, double mean, double sigma);

/// Normalised product Gaussian in (p, r) centred at (p0, r0).
WignerDistribution gaussian_wigner(const Grid1D& grid_p, const Grid1D& grid_r, double p0,
                                   double r0, double sigma_p, double sigma_r);

/// Integrates F over R.
WignerDistribution marginal_over_R(const JointDistribution& F);
/// Integrates F over p and r.
VirtualDensity marginal_over_pr(const JointDistribution& F);

/// Raw moments keyed by per-axis orders, e.g. {2, 2} on a joint means
/// <R^2 p^2> (the r axis is integrated out).
using MultiOrder = std::vector<int>;
using MomentSet = std::map<MultiOrder, double>;

inline constexpr int kMaxMomentOrder = 8;

/// Quadrature moments of an arbitrary field: each MultiOrder gives the powers
/// of the leading axes (missing trailing axes count as order 0). Throws
/// InvalidArgument for negative orders, too many entries, or total > 8.
MomentSet moments(const RealField& f, const std::vector<MultiOrder>& orders);
/// <R^a p^b>.
MomentSet moments(const JointDistribution& F, const std::vector<MultiOrder>& orders);
/// <p^a r^b>.
MomentSet moments(const WignerDistribution& W, const std::vector<MultiOrder>& orders);
/// <R^a>.
MomentSet moments(const VirtualDensity& rho, const std::vector<MultiOrder>& orders);

using JointSample = std::array<double, 3>;  // (R, p, r)

/// Draws `count` (R, p, r) triples by inverse CDF over the flattened grid with
/// uniform jitter inside each cell. Throws SignedDensity if min F is below
/// -1e-9 max F, InvalidArgument if count == 0.
std::vector<JointSample> sample_joint(const JointDistribution& F, std::size_t count,
                                      std::uint64_t seed);

/// Largest spectral magnitude in the outermost frequency band of any axis,
/// relative to the largest overall. Small values mean the grid resolves f.
double spectral_tail_ratio(const RealField& f);

}  // namespace moyalkit
