#include <cmath>
#include <string>

#include "moyalkit/dynamics.hpp"
#include "moyalkit/spectral.hpp"

namespace moyalkit {
namespace {

void validate(const EvolutionParams& p) {
  if (!(p.mass > 0.0)) throw InvalidArgument("evolution mass must be positive");
  if (!(p.dt > 0.0) || !std::isfinite(p.dt)) throw InvalidArgument("evolution dt must be positive");
  if (p.steps < 1) throw InvalidArgument("evolution steps must be >= 1");
  if (p.snapshot_every < 1) throw InvalidArgument("snapshot_every must be >= 1");
  if (!std::isfinite(p.hbar)) throw InvalidArgument("hbar must be finite");
  if (p.n_max && (*p.n_max < 0 || *p.n_max > kMaxSeriesTerms)) {
    throw InvalidArgument("n_max must lie in [0, 20]");
  }
}

// Phase factors exp(i k p tau / m) on the (p, k) lattice for a streaming
// substep of length tau. The Nyquist column keeps the real part so the
// update matches the real trigonometric interpolant.
ComplexField streaming_factors(const Grid1D& gp, const Grid1D& gr, double tau, double mass) {
  const ConjugateGrid1D k = conjugate(gr);
  ComplexField f({gp, gr});
  for (std::size_t ip = 0; ip < gp.size(); ++ip) {
    const double v = gp.point(ip) * tau / mass;
    f(ip, 0) = std::cos(k.frequency(0) * v);
    for (std::size_t m = 1; m < k.size(); ++m) f(ip, m) = std::polar(1.0, k.frequency(m) * v);
  }
  return f;
}

// Generator S(lambda, r) of the potential substep, dW~/dt = S W~ with W
// transformed over p. Purely imaginary and odd in lambda.
ComplexField kick_symbol(const Grid1D& gp, const Grid1D& gr, const Potential& U,
                         const EvolutionParams& params) {
  const ConjugateGrid1D lambda = conjugate(gp);
  const std::size_t nl = lambda.size(), nr = gr.size();
  ComplexField S({gp, gr});
  const double hbar = params.hbar;

  if (hbar == 0.0 || params.method == KickMethod::Series) {
    // sum_n (-1)^n (hbar/2)^(2n) / (2n+1)! U^(2n+1)(r) (-i lambda)^(2n+1)
    //   = -i sum_n (hbar/2)^(2n) / (2n+1)! U^(2n+1)(r) lambda^(2n+1)
    const int last = hbar == 0.0 ? 0 : params.n_max.value_or(kMaxSeriesTerms);
    const auto degree = U.polynomial_degree();
    double coeff = 1.0;
    double last_rel = 0.0;
    bool converged = hbar == 0.0;
    for (int n = 0; n <= last; ++n) {
      const int order = 2 * n + 1;
      if (n > 0) coeff *= 0.25 * hbar * hbar / ((2.0 * n) * (2.0 * n + 1.0));
      if (n > 0 && (coeff == 0.0 || (degree && order > *degree))) {
        converged = true;
        break;
      }
      const RealField dU = U.derivative(gr, order, params.mass);
      double term_max = 0.0;
      for (std::size_t m = 1; m < nl; ++m) {
        const double lam_pow = std::pow(lambda.frequency(m), order);
        for (std::size_t ir = 0; ir < nr; ++ir) {
          const double t = coeff * dU(ir) * lam_pow;
          S(m, ir) += Complex(0.0, -t);
          term_max = std::max(term_max, std::abs(t));
        }
      }
      if (n > 0) {
        const double sum_max = max_abs(S);
        last_rel = sum_max > 0.0 ? term_max / sum_max : 0.0;
        if (!params.n_max && last_rel < kSeriesStopTolerance) {
          converged = true;
          break;
        }
      }
    }
    if (!params.n_max && !converged && last_rel > kSeriesConvergedTolerance) {
      throw NonConvergence("Moyal kick series did not converge within 20 terms (hbar=" +
                           format_value(hbar) + ")");
    }
    return S;
  }

  for (std::size_t m = 1; m < nl; ++m) {
    const double a = 0.5 * hbar * lambda.frequency(m);
    const RealField up = U.shifted(gr, a, params.mass);
    const RealField down = U.shifted(gr, -a, params.mass);
    for (std::size_t ir = 0; ir < nr; ++ir) {
      S(m, ir) = Complex(0.0, -(up(ir) - down(ir)) / hbar);
    }
  }
  return S;
}

void apply_along(RealField& W, const ComplexField& factors, std::size_t axis) {
  ComplexField spec = forward_transform(W, {axis});
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= factors[i];
  const ComplexField back = inverse_transform(spec, {axis});
  for (std::size_t i = 0; i < W.size(); ++i) W[i] = back[i].real();
}

}  // namespace

Trajectory propagate(const WignerDistribution& W0, const Potential& U,
                     const EvolutionParams& params, const SnapshotObserver& observer) {
  validate(params);
  const Grid1D& gp = W0.grid_p();
  const Grid1D& gr = W0.grid_r();

  const ComplexField half_stream = streaming_factors(gp, gr, 0.5 * params.dt, params.mass);
  ComplexField kick = kick_symbol(gp, gr, U, params);
  for (auto& s : kick.values()) s = std::exp(s * params.dt);

  Trajectory traj;
  auto record = [&](int step, const RealField& values) {
    const double t = step * params.dt;
    WignerDistribution W = [&] {
      try {
        return WignerDistribution::from_samples(values);
      } catch (const DecayGuard& e) {
        throw DecayGuard("propagation aborted at t=" + format_value(t) + ": " + e.what());
      }
    }();
    ConservedRecord rec{t, integrate(values), mean_energy(W, U, params.mass)};
    traj.snapshots.push_back({t, std::move(W)});
    traj.log.push_back(rec);
    if (observer) observer(traj.snapshots.back(), rec);
  };

  RealField state = W0.field();
  record(0, state);
  for (int step = 1; step <= params.steps; ++step) {
    apply_along(state, half_stream, 1);
    apply_along(state, kick, 0);
    apply_along(state, half_stream, 1);
    if (step % params.snapshot_every == 0 || step == params.steps) record(step, state);
  }
  return traj;
}

WignerDistribution analytic_free_evolution(const WignerDistribution& W0, double t, double mass) {
  if (!(mass > 0.0)) throw InvalidArgument("mass must be positive");
  if (t == 0.0) return W0;
  const Grid1D& gp = W0.grid_p();
  const Grid1D& gr = W0.grid_r();
  RealField out({gp, gr});
  RealField row({gr});
  std::vector<double> xs(gr.size());
  for (std::size_t ip = 0; ip < gp.size(); ++ip) {
    for (std::size_t ir = 0; ir < gr.size(); ++ir) {
      row(ir) = W0(ip, ir);
      xs[ir] = gr.point(ir) - gp.point(ip) * t / mass;
    }
    const auto shifted = spectral_interpolate(row, xs);
    for (std::size_t ir = 0; ir < gr.size(); ++ir) out(ip, ir) = shifted[ir];
  }
  return WignerDistribution::from_samples(std::move(out));
}

}  // namespace moyalkit
