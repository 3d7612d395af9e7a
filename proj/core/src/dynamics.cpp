#include "moyalkit/dynamics.hpp"

#include <cmath>
#include <string>

#include "moyalkit/spectral.hpp"

namespace moyalkit {
namespace {

// -p dW/dr / m
RealField streaming_term(const RealField& W, double mass) {
  if (!(mass > 0.0)) throw InvalidArgument("mass must be positive");
  RealField out = spectral_derivative(W, 1, 1);
  const Grid1D& gp = W.axis(0);
  const std::size_t nr = W.extent(1);
  for (std::size_t ip = 0; ip < gp.size(); ++ip) {
    const double v = -gp.point(ip) / mass;
    for (std::size_t ir = 0; ir < nr; ++ir) out(ip, ir) *= v;
  }
  return out;
}

// out(p, r) += coeff * a(r) * B(p, r)
void add_scaled_by_r(RealField& out, double coeff, const RealField& a, const RealField& B) {
  const std::size_t np = B.extent(0), nr = B.extent(1);
  for (std::size_t ip = 0; ip < np; ++ip) {
    for (std::size_t ir = 0; ir < nr; ++ir) out(ip, ir) += coeff * a(ir) * B(ip, ir);
  }
}

}  // namespace

RealField liouville_rhs(const WignerDistribution& W, const Potential& U, double mass) {
  RealField out = streaming_term(W.field(), mass);
  const RealField dU = U.derivative(W.grid_r(), 1, mass);
  add_scaled_by_r(out, 1.0, dU, spectral_derivative(W.field(), 0, 1));
  return out;
}

RealField moyal_rhs_series(const WignerDistribution& W, const Potential& U, double hbar,
                           double mass, TermCap n_max) {
  if (!std::isfinite(hbar)) throw InvalidArgument("hbar must be finite");
  if (n_max && (*n_max < 0 || *n_max > kMaxSeriesTerms)) {
    throw InvalidArgument("n_max must lie in [0, 20]");
  }
  RealField out = streaming_term(W.field(), mass);
  RealField force(W.field().axes());
  add_scaled_by_r(force, 1.0, U.derivative(W.grid_r(), 1, mass),
                  spectral_derivative(W.field(), 0, 1));

  const int last = n_max.value_or(kMaxSeriesTerms);
  const auto degree = U.polynomial_degree();
  const double half_hbar_sq = 0.25 * hbar * hbar;
  double coeff = 1.0;
  double last_rel = 0.0;
  bool converged = false;
  for (int n = 1; n <= last; ++n) {
    const int order = 2 * n + 1;
    coeff *= -half_hbar_sq / ((2.0 * n) * (2.0 * n + 1.0));
    if (coeff == 0.0 || (degree && order > *degree)) {
      converged = true;
      break;
    }
    const RealField dU = U.derivative(W.grid_r(), order, mass);
    const RealField dW = spectral_derivative(W.field(), 0, order);
    RealField term(W.field().axes());
    add_scaled_by_r(term, coeff, dU, dW);
    force += term;
    const double sum_norm = max_abs(force);
    last_rel = sum_norm > 0.0 ? max_abs(term) / sum_norm : 0.0;
    if (!n_max && last_rel < kSeriesStopTolerance) {
      converged = true;
      break;
    }
  }
  if (!n_max && !converged && last_rel > kSeriesConvergedTolerance) {
    throw NonConvergence("Moyal series: term " + std::to_string(kMaxSeriesTerms) +
                         " still at " + format_value(last_rel) + " of the partial sum (hbar=" +
                         format_value(hbar) + ")");
  }
  out += force;
  return out;
}

RealField moyal_rhs_spectral(const WignerDistribution& W, const Potential& U, double hbar,
                             double mass) {
  if (!(hbar != 0.0) || !std::isfinite(hbar)) {
    throw InvalidArgument("moyal_rhs_spectral needs finite hbar != 0; use liouville_rhs at 0");
  }
  ComplexField spec = forward_transform(W.field(), {0});
  const ConjugateGrid1D lambda = conjugate(W.grid_p());
  const std::size_t nl = lambda.size(), nr = W.grid_r().size();
  const Complex factor(0.0, -1.0 / hbar);

  // Row 0 is the unpaired Nyquist frequency; an odd symbol vanishes there.
  for (std::size_t ir = 0; ir < nr; ++ir) spec(0, ir) = 0.0;
  for (std::size_t m = 1; m < nl; ++m) {
    const double a = 0.5 * hbar * lambda.frequency(m);
    const RealField up = U.shifted(W.grid_r(), a, mass);
    const RealField down = U.shifted(W.grid_r(), -a, mass);
    for (std::size_t ir = 0; ir < nr; ++ir) spec(m, ir) *= factor * (up(ir) - down(ir));
  }
  RealField out = real_part_checked(inverse_transform(spec, {0}), 1e-9, "moyal_rhs_spectral");
  out += streaming_term(W.field(), mass);
  return out;
}

RealField collision_rhs(const JointDistribution& F, double epsilon, double mass) {
  if (!std::isfinite(epsilon)) throw InvalidArgument("epsilon must be finite");
  const WignerDistribution W = marginal_over_R(F);
  RealField out = streaming_term(W.field(), mass);
  if (epsilon == 0.0) return out;

  const RealField dF = spectral_derivative(F.field(), 0, 1);
  const std::size_t np = F.grid_p().size(), nr = F.grid_r().size();
  RealField G({F.grid_p(), F.grid_r()});
  for (std::size_t ip = 0; ip < np; ++ip) {
    for (std::size_t ir = 0; ir < nr; ++ir) G(ip, ir) = epsilon * dF(ir, ip, ir);
  }
  out += spectral_derivative(G, 0, 1);
  return out;
}

double mean_energy(const WignerDistribution& W, const Potential& U, double mass) {
  const RealField u = U.samples(W.grid_r(), mass);
  const Grid1D& gp = W.grid_p();
  double acc = 0.0;
  for (std::size_t ip = 0; ip < gp.size(); ++ip) {
    const double kinetic = 0.5 * gp.point(ip) * gp.point(ip) / mass;
    for (std::size_t ir = 0; ir < W.grid_r().size(); ++ir) {
      acc += (kinetic + u(ir)) * W(ip, ir);
    }
  }
  return acc * W.field().cell_volume();
}

}  // namespace moyalkit
