#include "moyalkit/oracles.hpp"

#include <array>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <numbers>

namespace moyalkit::oracle {
namespace {

using Cld = std::complex<long double>;

Cld joint_cf(const GaussianPreset& g, long double hbar, long double K, long double q) {
  const long double x = 0.5L * hbar * K * q;
  const long double sinc = x == 0.0L ? 1.0L : std::sin(x) / x;
  const Cld rho = std::exp(Cld(-0.5L * g.sigma_R * g.sigma_R * K * K, K * g.mean_R));
  const Cld w = std::exp(Cld(-0.5L * g.sigma_p * g.sigma_p * q * q, q * g.p0));
  return rho * w * sinc;
}

// 4th-order central stencil for the second derivative, offsets -2..2.
constexpr std::array<long double, 5> kD2{-1.0L / 12, 16.0L / 12, -30.0L / 12, 16.0L / 12,
                                         -1.0L / 12};

}  // namespace

std::complex<double> gaussian_characteristic(double K, double mu, double sigma) {
  return std::exp(std::complex<double>(-0.5 * sigma * sigma * K * K, K * mu));
}

double log_sinc_taylor(double xd) {
  using boost::multiprecision::cpp_dec_float_50;
  const cpp_dec_float_50 x(xd);
  const cpp_dec_float_50 x2 = x * x;
  cpp_dec_float_50 term = 1, sum = 1;
  for (int k = 1; k < 50; ++k) {
    term *= -x2 / ((2 * k) * (2 * k + 1));
    sum += term;
  }
  return static_cast<double>(log(sum));
}

double kappa22_finite_difference(const GaussianPreset& preset, double hbar) {
  const long double h = 1e-2L;
  Cld dKK = 0, dqq = 0, dKKqq = 0;
  for (int i = -2; i <= 2; ++i) {
    const long double wi = kD2[static_cast<std::size_t>(i + 2)];
    dKK += wi * joint_cf(preset, hbar, i * h, 0.0L);
    dqq += wi * joint_cf(preset, hbar, 0.0L, i * h);
    for (int j = -2; j <= 2; ++j) {
      const long double wj = kD2[static_cast<std::size_t>(j + 2)];
      dKKqq += wi * wj * joint_cf(preset, hbar, i * h, j * h);
    }
  }
  const long double h2 = h * h;
  // F~ = <exp(i(KR + qp))>, so d_K^2 d_q^2 F~ = <R^2 p^2> and d_K^2 F~ = -<R^2>.
  const long double R2p2 = (dKKqq / (h2 * h2)).real();
  const long double R2 = -(dKK / h2).real();
  const long double p2 = -(dqq / h2).real();
  return static_cast<double>(R2p2 - R2 * p2);
}

RealField sheared_gaussian_wigner(const Grid1D& grid_p, const Grid1D& grid_r, double p0, double r0,
                                  double sigma_p, double sigma_r, double t, double mass) {
  const double norm = 1.0 / (2.0 * std::numbers::pi * sigma_p * sigma_r);
  return sample(grid_p, grid_r, [&](double p, double r) {
    const double zp = (p - p0) / sigma_p;
    const double zr = (r - p * t / mass - r0) / sigma_r;
    return norm * std::exp(-0.5 * (zp * zp + zr * zr));
  });
}

double harmonic_position(double r0, double p0, double omega, double mass, double t) {
  return r0 * std::cos(omega * t) + p0 / (mass * omega) * std::sin(omega * t);
}

}  // namespace moyalkit::oracle
