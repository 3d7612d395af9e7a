#pragma once

#include <cstdint>
#include <vector>

#include "moyalkit/coupling.hpp"
#include "moyalkit/states.hpp"

namespace moyalkit {

/// Characteristic function F~(K, q, k) on the zero-centred conjugate lattice.
struct CharacteristicField {
  ConjugateGrid1D K;
  ConjugateGrid1D q;
  ConjugateGrid1D k;
  ComplexField values;  // axis order (K, q, k)

  Complex at(std::size_t iK, std::size_t iq, std::size_t ik) const { return values(iK, iq, ik); }
  Complex origin() const { return values(K.zero_index(), q.zero_index(), k.zero_index()); }
};

/// Forward transform of F over all three axes (exp(+i(KR + qp + kr))).
CharacteristicField characteristic_function(const JointDistribution& F);

/// ln[F~ / (rho~ W~)] on the lattice points where it is meaningful.
struct PhiField {
  ConjugateGrid1D K;
  ConjugateGrid1D q;
  ConjugateGrid1D k;
  double hbar;
  RealField values;            // axis order (K, q, k); zero outside the mask
  std::vector<std::uint8_t> mask;

  std::size_t index(std::size_t iK, std::size_t iq, std::size_t ik) const {
    return (iK * q.size() + iq) * k.size() + ik;
  }
  bool valid(std::size_t iK, std::size_t iq, std::size_t ik) const {
    return mask[index(iK, iq, ik)] != 0;
  }
  double at(std::size_t iK, std::size_t iq, std::size_t ik) const {
    return values[index(iK, iq, ik)];
  }
  std::size_t valid_count() const;
};

inline constexpr double kPhiDefaultThreshold = 1e-6;
/// Points whose ratio F~ / (rho~ W~) has real part below this are excluded:
/// they sit on a kernel zero or a negative lobe where ln is not real.
inline constexpr double kPhiMinRatio = 1e-2;
inline constexpr double kPhiImaginaryTolerance = 1e-6;

/// Masked pointwise log-ratio. The mask keeps points with |rho~ W~| above
/// `threshold` times its maximum and a ratio with real part >= 1e-2. Throws
/// ImaginaryResidue if any kept point has |Im ln| > 1e-6.
PhiField phi_field(const JointDistribution& F, const VirtualDensity& rho,
                   const WignerDistribution& W, double threshold = kPhiDefaultThreshold);

struct PhiSeriesFit {
  double c2;  // coefficient of (hbar K q)^2
  double c4;  // coefficient of (hbar K q)^4
  std::size_t support;
};

inline constexpr std::size_t kMinPhiSupport = 50;

/// Least-squares fit of Phi = c2 (hbar K q)^2 + c4 (hbar K q)^4 over masked
/// points with 0 < |hbar K q / 2| < 0.5 (all k slices). At hbar = 0 the fit
/// runs in K q itself over 0 < |K q| < 1. Throws InsufficientSupport below
/// 50 points.
PhiSeriesFit phi_series_coefficients(const PhiField& phi, double hbar);

/// <R^2 p^2> - <R^2><p^2> by grid quadrature. Throws InsufficientSupport if the
/// grid does not resolve F spectrally.
double kappa22(const JointDistribution& F);

struct HeisenbergCheck {
  double kappa22;
  double sigma_R2;  // sqrt(<R^4> - <R^2>^2)
  double sigma_p2;  // sqrt(<p^4> - <p^2>^2)
  double lhs;       // sigma_R2 * sigma_p2
  double rhs;       // hbar^2 / 2
  bool cauchy_schwarz_holds;  // kappa22 >= -lhs
  bool relation_holds;        // lhs >= rhs
};

HeisenbergCheck heisenberg_check(const JointDistribution& F, double hbar);

struct ClassicalLimitScan {
  std::vector<double> hbars;
  std::vector<double> deviation;  // ||F(hbar) - rho W||_inf
  std::vector<double> kappa22;
  double slope;
};

/// Builds F by the spectral route for each hbar and regresses
/// log ||F - rho W||_inf on log hbar. Needs >= 4 positive values spanning a
/// factor of 8; throws DegenerateFit if a deviation falls below 1e-14.
ClassicalLimitScan classical_limit_scan(const VirtualDensity& rho, const WignerDistribution& W,
                                        const std::vector<double>& hbars);

struct CumulantReport {
  double hbar;
  double kappa22;
  double phi_c2;
  double phi_c4;
  double sigma_R2;
  double sigma_p2;
  double heisenberg_lhs;
  double heisenberg_rhs;
  double quoted_kappa22;  // -hbar^2 / 2, the three-dimensional closed form, kept for comparison
  double classical_slope;
};

inline const std::vector<double> kDefaultClassicalScan{1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2};

/// Full analysis of the spectral joint built from (rho, W) at hbar.
CumulantReport cumulant_report(const VirtualDensity& rho, const WignerDistribution& W, double hbar,
                               const std::vector<double>& scan_hbars = kDefaultClassicalScan);

}  // namespace moyalkit
