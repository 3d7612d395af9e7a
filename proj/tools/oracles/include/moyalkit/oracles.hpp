#pragma once

// Closed-form reference values, independent of the spectral machinery in the
// core library. Shared by the unit tests and `moyalkit verify`.

#include <complex>

#include "moyalkit/field.hpp"

namespace moyalkit::oracle {

/// exp(i K mu - sigma^2 K^2 / 2): characteristic function of N(mu, sigma^2).
std::complex<double> gaussian_characteristic(double K, double mu, double sigma);

/// ln(sin x / x) from a 50-term Taylor series evaluated in 50-digit arithmetic.
double log_sinc_taylor(double x);

struct GaussianPreset {
  double mean_R = 0.0;
  double sigma_R = 1.0;
  double p0 = 0.0;
  double sigma_p = 1.0;
};

/// <R^2 p^2> - <R^2><p^2> of the joint whose characteristic function is
/// rho~(K) sinc(hbar K q / 2) W~(q, 0), from 4th-order central differences of
/// that closed form at the origin, in long double.
double kappa22_finite_difference(const GaussianPreset& preset, double hbar);

/// Product-Gaussian Wigner function centred at (p0, r0), sheared by free
/// flight: W(p, r - p t / m).
RealField sheared_gaussian_wigner(const Grid1D& grid_p, const Grid1D& grid_r, double p0, double r0,
                                  double sigma_p, double sigma_r, double t, double mass);

/// Classical harmonic orbit r(t) = r0 cos(w t) + p0 / (m w) sin(w t).
double harmonic_position(double r0, double p0, double omega, double mass, double t);

}  // namespace moyalkit::oracle
