#pragma once

#include <optional>

#include "moyalkit/states.hpp"

namespace moyalkit {

/// Series truncation: a fixed highest index n_max, or nullopt for automatic
/// truncation (stop once a term drops below 1e-12 of the partial sum).
using TermCap = std::optional<int>;
inline constexpr TermCap kAutoTerms = std::nullopt;
inline constexpr int kMaxSeriesTerms = 20;

/// Relative size of the final term above which automatic truncation reports
/// NonConvergence when the cap is hit.
inline constexpr double kSeriesConvergedTolerance = 1e-8;
inline constexpr double kSeriesStopTolerance = 1e-12;

/// One sample of the sinc coupling kernel sin(x)/x and its logarithm, where
/// x = hbar K q / 2. log_sinc is empty where the kernel is zero or negative.
struct CouplingKernelSample {
  double x;
  double sinc_value;
  std::optional<double> log_sinc_value;
};

CouplingKernelSample coupling_kernel(double x);

/// F(R, p, r) = rho(R) W(p, r). Requires rho's grid to equal W's r grid.
JointDistribution classical_joint(const VirtualDensity& rho, const WignerDistribution& W);

/// F = sum_n (-1)^n (hbar/2)^(2n) / (2n+1)! * d^(2n)rho/dR^(2n) * d^(2n)W/dp^(2n),
/// with derivatives taken spectrally. Only hbar^2 enters, so the sign of hbar
/// is irrelevant; the result records |hbar|. Throws NonConvergence when
/// automatic truncation exhausts the 20-term cap.
JointDistribution quantum_joint_series(const VirtualDensity& rho, const WignerDistribution& W,
                                       double hbar, TermCap n_max = kAutoTerms);

/// Builds F through its characteristic function rho~(K) sinc(hbar K q / 2) W~(q, k)
/// on the full conjugate lattice. Throws ImaginaryResidue if the inverse
/// transform leaves an imaginary part above 1e-9 of the real part.
JointDistribution quantum_joint_spectral(const VirtualDensity& rho, const WignerDistribution& W,
                                         double hbar);

}  // namespace moyalkit
