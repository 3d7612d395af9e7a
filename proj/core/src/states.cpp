#include "moyalkit/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "moyalkit/spectral.hpp"

namespace moyalkit {
namespace {

void require_normalized(const RealField& f, std::string_view what, double tol = kNormTolerance) {
  const double total = integrate(f);
  if (!(std::abs(total - 1.0) <= tol)) {
    throw InvalidArgument(std::string(what) + " integral is " + format_value(total) +
                          ", expected 1");
  }
}

double gaussian(double x, double mean, double sigma) {
  const double z = (x - mean) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

void require_gaussian_fits(const Grid1D& grid, double mean, double sigma, std::string_view what) {
  if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mean)) {
    throw InvalidArgument(std::string(what) + " needs finite mean and sigma > 0");
  }
  if (std::abs(mean) + 8.0 * sigma > grid.half_width()) {
    throw DecayGuard(std::string(what) + ": |mean| + 8 sigma = " +
                     format_value(std::abs(mean) + 8.0 * sigma) + " exceeds half_width " +
                     format_value(grid.half_width()));
  }
}

}  // namespace

VirtualDensity VirtualDensity::from_samples(RealField values) {
  if (values.rank() != 1) throw InvalidArgument("virtual density needs exactly one axis");
  require_finite(values, "virtual density");
  for (double v : values.values()) {
    if (v < -1e-12) throw InvalidArgument("virtual density has negative samples");
  }
  require_decaying(values, "virtual density");
  require_normalized(values, "virtual density");
  return VirtualDensity(std::move(values));
}

WignerDistribution WignerDistribution::from_samples(RealField values) {
  if (values.rank() != 2) throw InvalidArgument("Wigner distribution needs axes (p, r)");
  require_finite(values, "Wigner distribution");
  require_decaying(values, "Wigner distribution");
  require_normalized(values, "Wigner distribution");
  return WignerDistribution(std::move(values));
}

JointDistribution JointDistribution::from_samples(RealField values, double hbar_used) {
  if (values.rank() != 3) throw InvalidArgument("joint distribution needs axes (R, p, r)");
  if (!(values.axis(0) == values.axis(2))) {
    throw GridMismatch("joint distribution: R and r axes must share one grid");
  }
  if (!(hbar_used >= 0.0)) throw InvalidArgument("hbar_used must be >= 0");
  require_finite(values, "joint distribution");
  require_normalized(values, "joint distribution", kJointNormTolerance);
  return JointDistribution(std::move(values), hbar_used);
}

VirtualDensity gaussian_density(const Grid1D& grid, double mean, double sigma) {
  require_gaussian_fits(grid, mean, sigma, "gaussian_density");
  RealField f = sample(grid, [&](double x) { return gaussian(x, mean, sigma); });
  // Normalised on the grid, so coarse grids fail later on the resolution
  // guard rather than here.
  f *= 1.0 / integrate(f);
  return VirtualDensity::from_samples(std::move(f));
}

WignerDistribution gaussian_wigner(const Grid1D& grid_p, const Grid1D& grid_r, double p0,
                                   double r0, double sigma_p, double sigma_r) {
  require_gaussian_fits(grid_p, p0, sigma_p, "gaussian_wigner (p)");
  require_gaussian_fits(grid_r, r0, sigma_r, "gaussian_wigner (r)");
  RealField f = sample(grid_p, grid_r, [&](double p, double r) {
    return gaussian(p, p0, sigma_p) * gaussian(r, r0, sigma_r);
  });
  f *= 1.0 / integrate(f);
  return WignerDistribution::from_samples(std::move(f));
}

WignerDistribution marginal_over_R(const JointDistribution& F) {
  const RealField& f = F.field();
  const std::size_t nR = f.extent(0);
  const std::size_t plane = f.extent(1) * f.extent(2);
  RealField w({F.grid_p(), F.grid_r()});
  for (std::size_t iR = 0; iR < nR; ++iR) {
    for (std::size_t k = 0; k < plane; ++k) w[k] += f[iR * plane + k];
  }
  w *= F.grid_R().step();
  return WignerDistribution::from_samples(std::move(w));
}

VirtualDensity marginal_over_pr(const JointDistribution& F) {
  const RealField& f = F.field();
  const std::size_t nR = f.extent(0);
  const std::size_t plane = f.extent(1) * f.extent(2);
  RealField rho({F.grid_R()});
  for (std::size_t iR = 0; iR < nR; ++iR) {
    double s = 0.0;
    for (std::size_t k = 0; k < plane; ++k) s += f[iR * plane + k];
    rho(iR) = s;
  }
  rho *= F.grid_p().step() * F.grid_r().step();
  return VirtualDensity::from_samples(std::move(rho));
}

MomentSet moments(const RealField& f, const std::vector<MultiOrder>& orders) {
  const std::size_t rank = f.rank();
  for (const auto& o : orders) {
    if (o.size() > rank) throw InvalidArgument("moment order has more entries than axes");
    int total = 0;
    for (int a : o) {
      if (a < 0) throw InvalidArgument("negative moment order");
      total += a;
    }
    if (total > kMaxMomentOrder) {
      throw InvalidArgument("moment total order " + std::to_string(total) + " exceeds 8");
    }
  }

  std::array<std::vector<double>, 3> coords;
  for (std::size_t a = 0; a < rank; ++a) coords[a] = f.axis(a).points();
  const double dv = f.cell_volume();

  MomentSet out;
  for (const auto& o : orders) {
    std::array<int, 3> pw{0, 0, 0};
    for (std::size_t a = 0; a < o.size(); ++a) pw[a] = o[a];
    std::array<std::vector<double>, 3> weight;
    for (std::size_t a = 0; a < 3; ++a) {
      const std::size_t n = a < rank ? f.extent(a) : 1;
      weight[a].assign(n, 1.0);
      if (a < rank && pw[a] > 0) {
        for (std::size_t j = 0; j < n; ++j) weight[a][j] = std::pow(coords[a][j], pw[a]);
      }
    }
    const std::size_t n0 = weight[0].size(), n1 = weight[1].size(), n2 = weight[2].size();
    double acc = 0.0;
    for (std::size_t i = 0; i < n0; ++i) {
      double acc_i = 0.0;
      for (std::size_t j = 0; j < n1; ++j) {
        double acc_j = 0.0;
        const std::size_t base = (i * n1 + j) * n2;
        for (std::size_t k = 0; k < n2; ++k) acc_j += weight[2][k] * f[base + k];
        acc_i += weight[1][j] * acc_j;
      }
      acc += weight[0][i] * acc_i;
    }
    MultiOrder key(o);
    out[key] = acc * dv;
  }
  return out;
}

MomentSet moments(const JointDistribution& F, const std::vector<MultiOrder>& orders) {
  return moments(F.field(), orders);
}

MomentSet moments(const WignerDistribution& W, const std::vector<MultiOrder>& orders) {
  return moments(W.field(), orders);
}

MomentSet moments(const VirtualDensity& rho, const std::vector<MultiOrder>& orders) {
  return moments(rho.field(), orders);
}

double spectral_tail_ratio(const RealField& f) {
  double worst = 0.0;
  for (std::size_t a = 0; a < f.rank(); ++a) {
    const ComplexField spec = forward_transform(f, {a});
    const std::size_t n = f.extent(a);
    const std::size_t stride = f.stride(a);
    double tail = 0.0;
    double peak = 0.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const std::size_t m = (i / stride) % n;
      const double mag = std::abs(spec[i]);
      peak = std::max(peak, mag);
      if (m <= 1 || m == n - 1) tail = std::max(tail, mag);
    }
    if (peak > 0.0) worst = std::max(worst, tail / peak);
  }
  return worst;
}

}  // namespace moyalkit
