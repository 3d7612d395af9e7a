#include <cmath>
#include <string>

#include "moyalkit/dynamics.hpp"
#include "moyalkit/spectral.hpp"

namespace moyalkit {
namespace {

// Coefficients c_k of U(r) = sum_k c_k r^k for the polynomial presets.
std::vector<double> polynomial_coefficients(const Potential& U, double mass) {
  switch (U.kind()) {
    case Potential::Kind::Free: return {0.0};
    case Potential::Kind::Harmonic: return {0.0, 0.0, 0.5 * mass * U.omega() * U.omega()};
    case Potential::Kind::Quartic: return {0.0, 0.0, U.a2(), 0.0, U.a4()};
    case Potential::Kind::FromDensity: break;
  }
  return {};
}

double polynomial_derivative(const std::vector<double>& c, int order, double x) {
  double acc = 0.0;
  for (std::size_t k = static_cast<std::size_t>(order); k < c.size(); ++k) {
    double falling = 1.0;
    for (int i = 0; i < order; ++i) falling *= static_cast<double>(k - static_cast<std::size_t>(i));
    acc += c[k] * falling * std::pow(x, static_cast<int>(k) - order);
  }
  return acc;
}

}  // namespace

Potential Potential::free_particle() { return Potential(); }

Potential Potential::harmonic(double omega) {
  if (!std::isfinite(omega)) throw InvalidArgument("harmonic omega must be finite");
  Potential p;
  p.kind_ = Kind::Harmonic;
  p.omega_ = omega;
  return p;
}

Potential Potential::quartic(double a2, double a4) {
  if (!std::isfinite(a2) || !(a4 > 0.0) || !std::isfinite(a4)) {
    throw InvalidArgument("quartic potential needs finite a2 and a4 > 0");
  }
  Potential p;
  p.kind_ = Kind::Quartic;
  p.a2_ = a2;
  p.a4_ = a4;
  return p;
}

Potential Potential::from_density(const VirtualDensity& rho, double epsilon) {
  if (!std::isfinite(epsilon)) throw InvalidArgument("epsilon must be finite");
  Potential p;
  p.kind_ = Kind::FromDensity;
  p.epsilon_ = epsilon;
  p.density_samples_ = rho.field() * epsilon;
  return p;
}

Potential potential_from_density(const VirtualDensity& rho, double epsilon) {
  return Potential::from_density(rho, epsilon);
}

std::optional<int> Potential::polynomial_degree() const {
  switch (kind_) {
    case Kind::Free: return 0;
    case Kind::Harmonic: return 2;
    case Kind::Quartic: return 4;
    case Kind::FromDensity: return std::nullopt;
  }
  return std::nullopt;
}

void Potential::require_grid(const Grid1D& grid) const {
  if (kind_ == Kind::FromDensity && !(density_samples_->axis(0) == grid)) {
    throw GridMismatch("density potential evaluated on a grid other than rho's");
  }
}

RealField Potential::samples(const Grid1D& grid, double mass) const {
  return derivative(grid, 0, mass);
}

RealField Potential::derivative(const Grid1D& grid, int order, double mass) const {
  if (order < 0) throw InvalidArgument("negative derivative order");
  require_grid(grid);
  if (kind_ == Kind::FromDensity) return spectral_derivative(*density_samples_, 0, order);
  const auto c = polynomial_coefficients(*this, mass);
  return sample(grid, [&](double x) { return polynomial_derivative(c, order, x); });
}

RealField Potential::shifted(const Grid1D& grid, double shift, double mass) const {
  require_grid(grid);
  if (kind_ == Kind::FromDensity) return spectral_translate(*density_samples_, shift);
  const auto c = polynomial_coefficients(*this, mass);
  return sample(grid, [&](double x) { return polynomial_derivative(c, 0, x + shift); });
}

}  // namespace moyalkit
