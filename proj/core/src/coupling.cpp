#include "moyalkit/coupling.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "moyalkit/spectral.hpp"

namespace moyalkit {
namespace {

constexpr double kSeriesSwitch = 1e-4;

void require_compatible(const VirtualDensity& rho, const WignerDistribution& W) {
  if (!(rho.grid() == W.grid_r())) {
    throw GridMismatch("virtual density grid must equal the Wigner r grid");
  }
}

// Accumulates coeff * a(R) (x) B(p, r) into a 3-axis field.
void add_outer(RealField& F, double coeff, const RealField& a, const RealField& B) {
  const std::size_t plane = B.size();
  for (std::size_t iR = 0; iR < a.size(); ++iR) {
    const double s = coeff * a[iR];
    double* row = F.values().data() + iR * plane;
    for (std::size_t k = 0; k < plane; ++k) row[k] += s * B[k];
  }
}

double sinc(double x) {
  if (std::abs(x) < kSeriesSwitch) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace

CouplingKernelSample coupling_kernel(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("coupling_kernel argument must be finite");
  CouplingKernelSample out{x, sinc(x), std::nullopt};
  if (std::abs(x) < kSeriesSwitch) {
    const double x2 = x * x;
    out.log_sinc_value = -x2 / 6.0 - x2 * x2 / 180.0;
    return out;
  }
  const double m = std::round(x / std::numbers::pi);
  const bool at_zero = std::abs(x - m * std::numbers::pi) <= 1e-12 * std::abs(x);
  if (!at_zero && out.sinc_value > 0.0) out.log_sinc_value = std::log(out.sinc_value);
  return out;
}

JointDistribution classical_joint(const VirtualDensity& rho, const WignerDistribution& W) {
  require_compatible(rho, W);
  RealField F({rho.grid(), W.grid_p(), W.grid_r()});
  add_outer(F, 1.0, rho.field(), W.field());
  return JointDistribution::from_samples(std::move(F), 0.0);
}

JointDistribution quantum_joint_series(const VirtualDensity& rho, const WignerDistribution& W,
                                       double hbar, TermCap n_max) {
  require_compatible(rho, W);
  if (!std::isfinite(hbar)) throw InvalidArgument("hbar must be finite");
  if (n_max && (*n_max < 0 || *n_max > kMaxSeriesTerms)) {
    throw InvalidArgument("n_max must lie in [0, 20]");
  }
  const int last = n_max.value_or(kMaxSeriesTerms);
  const double half_hbar_sq = 0.25 * hbar * hbar;

  RealField F({rho.grid(), W.grid_p(), W.grid_r()});
  add_outer(F, 1.0, rho.field(), W.field());
  double sum_norm = max_abs(rho.field()) * max_abs(W.field());
  double coeff = 1.0;
  double last_rel = 0.0;
  bool converged = false;

  for (int n = 1; n <= last; ++n) {
    coeff *= -half_hbar_sq / ((2.0 * n) * (2.0 * n + 1.0));
    if (coeff == 0.0) {
      converged = true;
      break;
    }
    const RealField dR = spectral_derivative(rho.field(), 0, 2 * n);
    const RealField dp = spectral_derivative(W.field(), 0, 2 * n);
    add_outer(F, coeff, dR, dp);
    const double term_norm = std::abs(coeff) * max_abs(dR) * max_abs(dp);
    sum_norm = max_abs(F);
    last_rel = sum_norm > 0.0 ? term_norm / sum_norm : 0.0;
    if (!n_max && last_rel < kSeriesStopTolerance) {
      converged = true;
      break;
    }
  }
  if (!n_max && !converged && last_rel > kSeriesConvergedTolerance) {
    throw NonConvergence("joint series: term " + std::to_string(kMaxSeriesTerms) +
                         " still at " + format_value(last_rel) + " of the partial sum (hbar=" +
                         format_value(hbar) + ")");
  }
  return JointDistribution::from_samples(std::move(F), std::abs(hbar));
}

JointDistribution quantum_joint_spectral(const VirtualDensity& rho, const WignerDistribution& W,
                                         double hbar) {
  require_compatible(rho, W);
  if (!std::isfinite(hbar)) throw InvalidArgument("hbar must be finite");
  const ComplexField rho_t = forward_transform(rho.field(), {0});
  const ComplexField W_t = forward_transform(W.field(), {0, 1});
  const ConjugateGrid1D K = conjugate(rho.grid());
  const ConjugateGrid1D q = conjugate(W.grid_p());

  ComplexField spec({rho.grid(), W.grid_p(), W.grid_r()});
  const std::size_t nK = K.size(), nq = q.size(), nk = W.grid_r().size();
  for (std::size_t iK = 0; iK < nK; ++iK) {
    for (std::size_t iq = 0; iq < nq; ++iq) {
      const double kernel = sinc(0.5 * hbar * K.frequency(iK) * q.frequency(iq));
      const Complex a = rho_t(iK) * kernel;
      for (std::size_t ik = 0; ik < nk; ++ik) spec(iK, iq, ik) = a * W_t(iq, ik);
    }
  }
  const ComplexField back = inverse_transform(spec, {0, 1, 2});
  RealField F = real_part_checked(back, 1e-9, "quantum_joint_spectral");
  return JointDistribution::from_samples(std::move(F), std::abs(hbar));
}

}  // namespace moyalkit
