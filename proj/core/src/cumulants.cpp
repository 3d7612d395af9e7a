#include "moyalkit/cumulants.hpp"

#include <cmath>
#include <string>

#include "moyalkit/spectral.hpp"

namespace moyalkit {
namespace {

void require_resolved(const RealField& f, std::string_view what) {
  const double tail = spectral_tail_ratio(f);
  if (!(tail <= kDecayGuard)) {
    throw InsufficientSupport(std::string(what) + ": grid does not resolve the field (spectral tail " +
                              format_value(tail) + ")");
  }
}

struct LineFit {
  double slope;
  double intercept;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (!(std::abs(det) > 0.0)) throw DegenerateFit("line fit over coincident abscissae");
  const double slope = (n * sxy - sx * sy) / det;
  return {slope, (sy - slope * sx) / n};
}

}  // namespace

CharacteristicField characteristic_function(const JointDistribution& F) {
  require_decaying(F.field(), "characteristic_function input");
  return {conjugate(F.grid_R()), conjugate(F.grid_p()), conjugate(F.grid_r()),
          forward_transform(F.field(), {0, 1, 2})};
}

std::size_t PhiField::valid_count() const {
  std::size_t c = 0;
  for (auto m : mask) c += m != 0;
  return c;
}

PhiField phi_field(const JointDistribution& F, const VirtualDensity& rho,
                   const WignerDistribution& W, double threshold) {
  if (!(threshold > 0.0)) throw InvalidArgument("phi_field threshold must be positive");
  if (!(rho.grid() == F.grid_R()) || !(W.grid_p() == F.grid_p()) || !(W.grid_r() == F.grid_r())) {
    throw GridMismatch("phi_field: rho and W must live on F's grids");
  }
  const CharacteristicField Ft = characteristic_function(F);
  const ComplexField rho_t = forward_transform(rho.field(), {0});
  const ComplexField W_t = forward_transform(W.field(), {0, 1});

  const std::size_t nK = Ft.K.size(), nq = Ft.q.size(), nk = Ft.k.size();
  double denom_max = 0.0;
  for (std::size_t iK = 0; iK < nK; ++iK) {
    for (std::size_t i = 0; i < W_t.size(); ++i) {
      denom_max = std::max(denom_max, std::abs(rho_t(iK) * W_t[i]));
    }
  }

  PhiField phi{Ft.K, Ft.q, Ft.k, F.hbar_used(), RealField(F.field().axes()),
               std::vector<std::uint8_t>(F.field().size(), 0)};
  const double cut = threshold * denom_max;
  for (std::size_t iK = 0; iK < nK; ++iK) {
    for (std::size_t iq = 0; iq < nq; ++iq) {
      for (std::size_t ik = 0; ik < nk; ++ik) {
        const Complex denom = rho_t(iK) * W_t(iq, ik);
        if (!(std::abs(denom) > cut)) continue;
        const Complex ratio = Ft.at(iK, iq, ik) / denom;
        if (!(ratio.real() >= kPhiMinRatio)) continue;
        const Complex lg = std::log(ratio);
        if (std::abs(lg.imag()) > kPhiImaginaryTolerance) {
          throw ImaginaryResidue("phi_field: Im ln ratio = " + format_value(lg.imag()) +
                                 " at K=" + format_value(Ft.K.frequency(iK)) +
                                 ", q=" + format_value(Ft.q.frequency(iq)));
        }
        const std::size_t idx = phi.index(iK, iq, ik);
        phi.values[idx] = lg.real();
        phi.mask[idx] = 1;
      }
    }
  }
  return phi;
}

PhiSeriesFit phi_series_coefficients(const PhiField& phi, double hbar) {
  const bool classical = hbar == 0.0;
  // Normal equations for Phi ~ c2 s + c4 s^2.
  long double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0;
  std::size_t support = 0;
  for (std::size_t iK = 0; iK < phi.K.size(); ++iK) {
    for (std::size_t iq = 0; iq < phi.q.size(); ++iq) {
      const double Kq = phi.K.frequency(iK) * phi.q.frequency(iq);
      const double x = classical ? Kq : 0.5 * hbar * Kq;
      const double limit = classical ? 1.0 : 0.5;
      if (x == 0.0 || !(std::abs(x) < limit)) continue;
      const long double s = classical ? static_cast<long double>(Kq) * Kq
                                      : static_cast<long double>(hbar * Kq) * (hbar * Kq);
      for (std::size_t ik = 0; ik < phi.k.size(); ++ik) {
        if (!phi.valid(iK, iq, ik)) continue;
        const long double y = phi.at(iK, iq, ik);
        s11 += s * s;
        s12 += s * s * s;
        s22 += s * s * s * s;
        b1 += s * y;
        b2 += s * s * y;
        ++support;
      }
    }
  }
  if (support < kMinPhiSupport) {
    throw InsufficientSupport("phi_series_coefficients: " + std::to_string(support) +
                              " small-argument samples, need " + std::to_string(kMinPhiSupport));
  }
  const long double det = s11 * s22 - s12 * s12;
  if (!(det > 0)) throw DegenerateFit("phi_series_coefficients: singular normal equations");
  const double c2 = static_cast<double>((b1 * s22 - b2 * s12) / det);
  const double c4 = static_cast<double>((s11 * b2 - s12 * b1) / det);
  return {c2, c4, support};
}

double kappa22(const JointDistribution& F) {
  // Resolution first: on an unresolved grid the edge values are aliasing.
  require_resolved(F.field(), "kappa22");
  require_decaying(F.field(), "kappa22 input");
  const MomentSet m = moments(F, {{0, 0}, {2, 0}, {0, 2}, {2, 2}});
  const double norm = m.at({0, 0});
  const double R2 = m.at({2, 0}) / norm;
  const double p2 = m.at({0, 2}) / norm;
  return m.at({2, 2}) / norm - R2 * p2;
}

HeisenbergCheck heisenberg_check(const JointDistribution& F, double hbar) {
  require_resolved(F.field(), "heisenberg_check");
  require_decaying(F.field(), "heisenberg_check input");
  const VirtualDensity rho = marginal_over_pr(F);
  const WignerDistribution W = marginal_over_R(F);
  const MomentSet mR = moments(rho, {{2}, {4}});
  const MomentSet mp = moments(W, {{2}, {4}});

  HeisenbergCheck out{};
  out.kappa22 = kappa22(F);
  out.sigma_R2 = std::sqrt(std::max(0.0, mR.at({4}) - mR.at({2}) * mR.at({2})));
  out.sigma_p2 = std::sqrt(std::max(0.0, mp.at({4}) - mp.at({2}) * mp.at({2})));
  out.lhs = out.sigma_R2 * out.sigma_p2;
  out.rhs = 0.5 * hbar * hbar;
  out.cauchy_schwarz_holds = out.kappa22 >= -out.lhs;
  out.relation_holds = out.lhs >= out.rhs;
  return out;
}

ClassicalLimitScan classical_limit_scan(const VirtualDensity& rho, const WignerDistribution& W,
                                        const std::vector<double>& hbars) {
  if (hbars.size() < 4) throw InvalidArgument("classical_limit_scan needs at least 4 hbar values");
  double lo = hbars.front(), hi = hbars.front();
  for (double h : hbars) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw InvalidArgument("classical_limit_scan needs positive hbar values");
    }
    lo = std::min(lo, h);
    hi = std::max(hi, h);
  }
  if (hi < 8.0 * lo) throw InvalidArgument("classical_limit_scan hbar values must span a factor 8");

  const JointDistribution classical = classical_joint(rho, W);
  ClassicalLimitScan scan{hbars, {}, {}, 0.0};
  std::vector<double> lx, ly;
  for (double h : hbars) {
    const JointDistribution F = quantum_joint_spectral(rho, W, h);
    const double dev = linf_distance(F.field(), classical.field());
    if (!(dev >= 1e-14)) {
      throw DegenerateFit("classical_limit_scan: deviation " + format_value(dev) +
                          " at hbar=" + format_value(h) + " underflows");
    }
    scan.deviation.push_back(dev);
    scan.kappa22.push_back(kappa22(F));
    lx.push_back(std::log(h));
    ly.push_back(std::log(dev));
  }
  scan.slope = fit_line(lx, ly).slope;
  return scan;
}

CumulantReport cumulant_report(const VirtualDensity& rho, const WignerDistribution& W, double hbar,
                               const std::vector<double>& scan_hbars) {
  const JointDistribution F = quantum_joint_spectral(rho, W, hbar);
  require_resolved(F.field(), "cumulant_report");
  const PhiField phi = phi_field(F, rho, W);
  const PhiSeriesFit fit = phi_series_coefficients(phi, hbar);
  const HeisenbergCheck hc = heisenberg_check(F, hbar);
  const ClassicalLimitScan scan = classical_limit_scan(rho, W, scan_hbars);

  CumulantReport r{};
  r.hbar = hbar;
  r.kappa22 = hc.kappa22;
  r.phi_c2 = fit.c2;
  r.phi_c4 = fit.c4;
  r.sigma_R2 = hc.sigma_R2;
  r.sigma_p2 = hc.sigma_p2;
  r.heisenberg_lhs = hc.lhs;
  r.heisenberg_rhs = hc.rhs;
  r.quoted_kappa22 = -0.5 * hbar * hbar;
  r.classical_slope = scan.slope;
  return r;
}

}  // namespace moyalkit
