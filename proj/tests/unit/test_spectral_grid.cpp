#include <doctest.h>

#include <cmath>
#include <numbers>

#include "moyalkit/grid.hpp"
#include "moyalkit/spectral.hpp"

using namespace moyalkit;

namespace {

constexpr double kPi = std::numbers::pi;

RealField gaussian_1d(const Grid1D& g, double mu, double sigma) {
  return sample(g, [&](double x) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * kPi));
  });
}

double relative_linf(const ComplexField& a, const RealField& b) {
  double err = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    err = std::max(err, std::abs(a[i] - Complex(b[i], 0.0)));
    ref = std::max(ref, std::abs(b[i]));
  }
  return err / ref;
}

}  // namespace

TEST_CASE("make_grid spacing and points") {
  const Grid1D g = make_grid(16, 8.0);
  CHECK(g.step() == 1.0);
  CHECK(g.point(0) == -8.0);
  CHECK(g.point(15) == 7.0);
  CHECK(make_grid(128, 8.0).step() == 0.125);
  CHECK(g.points().size() == 16);
}

TEST_CASE("make_grid rejects bad arguments") {
  CHECK_THROWS_AS(make_grid(100, 8.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(8, 8.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(64, 0.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(64, -1.0), InvalidArgument);
}

TEST_CASE("conjugate grid is zero centred with spacing pi/L") {
  const Grid1D g = make_grid(32, 4.0);
  const ConjugateGrid1D k = conjugate(g);
  CHECK(k.size() == 32);
  CHECK(k.spacing() == doctest::Approx(kPi / 4.0).epsilon(1e-15));
  CHECK(k.frequency(k.zero_index()) == 0.0);
  CHECK(k.frequency(0) == doctest::Approx(-16 * kPi / 4.0));
  CHECK(k.frequency(k.mirror(5)) == doctest::Approx(-k.frequency(5)));
}

TEST_CASE("forward transform of a normalized Gaussian") {
  const Grid1D g = make_grid(128, 8.0);
  const RealField f = gaussian_1d(g, 0.0, 1.0);
  const ComplexField ft = forward_transform(f, {0});
  const ConjugateGrid1D k = conjugate(g);

  const Complex origin = ft(k.zero_index());
  CHECK(std::abs(origin - Complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(origin.real() - integrate(f)) < 1e-12);

  // exp(-sigma^2 w^2 / 2), closed form
  double err = 0.0;
  for (std::size_t m = 0; m < k.size(); ++m) {
    const double w = k.frequency(m);
    err = std::max(err, std::abs(ft(m) - Complex(std::exp(-0.5 * w * w), 0.0)));
  }
  CHECK(err < 1e-8);
}

TEST_CASE("forward transform of a shifted Gaussian carries the +i phase") {
  const Grid1D g = make_grid(128, 8.0);
  const RealField f = gaussian_1d(g, 1.5, 0.8);
  const ComplexField ft = forward_transform(f, {0});
  const ConjugateGrid1D k = conjugate(g);
  double err = 0.0;
  for (std::size_t m = 1; m < k.size(); ++m) {
    const double w = k.frequency(m);
    const Complex expect = std::exp(Complex(-0.5 * 0.64 * w * w, 1.5 * w));
    err = std::max(err, std::abs(ft(m) - expect));
  }
  CHECK(err < 1e-8);
}

TEST_CASE("point mass has a flat spectrum") {
  const Grid1D g = make_grid(64, 8.0);
  RealField f({g});
  const double m0 = 2.5;
  f(32) = m0 / g.step();  // sits at x = 0
  const ComplexField ft = forward_transform(f, {0});
  for (std::size_t m = 0; m < ft.size(); ++m) CHECK(std::abs(ft(m)) == doctest::Approx(m0));
}

TEST_CASE("round trip over every axis subset") {
  const Grid1D a = make_grid(16, 3.0), b = make_grid(32, 4.0), c = make_grid(16, 5.0);
  RealField f({a, b, c});
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sin(0.37 * static_cast<double>(i)) + 0.1;
  const std::vector<AxisSet> subsets{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
  for (const auto& axes : subsets) {
    const ComplexField back = inverse_transform(forward_transform(f, axes), axes);
    CHECK(relative_linf(back, f) < 1e-12);
  }
}

TEST_CASE("Parseval with the integral normalization") {
  const Grid1D gp = make_grid(64, 6.0), gr = make_grid(32, 8.0);
  const RealField f = sample(gp, gr, [](double p, double r) {
    return std::exp(-p * p - 0.5 * (r - 1.0) * (r - 1.0)) * (1.0 + 0.3 * p * r);
  });
  const std::vector<AxisSet> subsets{{0}, {1}, {0, 1}};
  double direct = 0.0;
  for (double v : f.values()) direct += v * v;
  direct *= f.cell_volume();
  for (const auto& axes : subsets) {
    const ComplexField ft = forward_transform(f, axes);
    double spec = 0.0;
    for (const Complex& v : ft.values()) spec += std::norm(v);
    double measure = 1.0;
    for (std::size_t a = 0; a < 2; ++a) {
      const bool transformed = std::find(axes.begin(), axes.end(), a) != axes.end();
      measure *= transformed ? conjugate(f.axis(a)).spacing() / (2.0 * kPi) : f.axis(a).step();
    }
    CHECK(std::abs(spec * measure - direct) / direct < 1e-10);
  }
}

TEST_CASE("spectral first derivative of exp(-x^2/2)") {
  const Grid1D g = make_grid(128, 8.0);
  const RealField f = sample(g, [](double x) { return std::exp(-0.5 * x * x); });
  const RealField d = spectral_derivative(f, 0, 1);
  const RealField expect = sample(g, [](double x) { return -x * std::exp(-0.5 * x * x); });
  CHECK(linf_distance(d, expect) < 1e-8);
}

TEST_CASE("spectral fourth derivative matches the Hermite closed form") {
  const Grid1D g = make_grid(128, 8.0);
  const RealField f = sample(g, [](double x) { return std::exp(-0.5 * x * x); });
  const RealField d4 = spectral_derivative(f, 0, 4);
  const RealField expect = sample(g, [](double x) {
    const double x2 = x * x;
    return (x2 * x2 - 6.0 * x2 + 3.0) * std::exp(-0.5 * x2);
  });
  CHECK(linf_distance(d4, expect) < 1e-6);
}

TEST_CASE("spectral derivative order 0 is the identity") {
  const Grid1D g = make_grid(32, 8.0);
  const RealField f = gaussian_1d(g, 0.3, 1.1);
  CHECK(linf_distance(spectral_derivative(f, 0, 0), f) == 0.0);
}

TEST_CASE("spectral derivative of a constant vanishes") {
  const Grid1D g = make_grid(64, 8.0);
  const RealField c = sample(g, [](double) { return 3.0; });
  CHECK(max_abs(spectral_derivative(c, 0, 1)) < 1e-12);
  CHECK(max_abs(spectral_derivative(c, 0, 2)) < 1e-12);
}

TEST_CASE("spectral derivative composes and is linear") {
  const Grid1D g = make_grid(128, 8.0);
  const RealField f = gaussian_1d(g, 0.0, 1.0);
  const RealField h = gaussian_1d(g, -0.5, 0.7);
  const RealField twice = spectral_derivative(spectral_derivative(f, 0, 2), 0, 3);
  CHECK(linf_distance(twice, spectral_derivative(f, 0, 5)) < 1e-9);

  RealField combo = f * 2.0;
  combo += h * -3.0;
  RealField lhs = spectral_derivative(combo, 0, 3);
  RealField rhs = spectral_derivative(f, 0, 3) * 2.0;
  rhs += spectral_derivative(h, 0, 3) * -3.0;
  CHECK(linf_distance(lhs, rhs) < 1e-10);
}

TEST_CASE("spectral derivative acts on the requested axis only") {
  const Grid1D gp = make_grid(64, 8.0), gr = make_grid(64, 8.0);
  const RealField f =
      sample(gp, gr, [](double p, double r) { return std::exp(-0.5 * p * p - r * r); });
  const RealField dr = spectral_derivative(f, 1, 1);
  const RealField expect = sample(
      gp, gr, [](double p, double r) { return -2.0 * r * std::exp(-0.5 * p * p - r * r); });
  CHECK(linf_distance(dr, expect) < 1e-9);
}

TEST_CASE("spectral derivative rejects orders beyond the grid") {
  const Grid1D g = make_grid(16, 8.0);
  const RealField f = gaussian_1d(g, 0.0, 1.0);
  CHECK_THROWS_AS(spectral_derivative(f, 0, 17), InvalidArgument);
  CHECK_THROWS_AS(spectral_derivative(f, 0, -1), InvalidArgument);
  CHECK_THROWS_AS(spectral_derivative(f, 1, 1), InvalidArgument);
}

TEST_CASE("spectral interpolation and translation reproduce a shifted Gaussian") {
  const Grid1D g = make_grid(128, 8.0);
  const RealField f = gaussian_1d(g, 0.0, 1.0);
  const std::vector<double> xs{-1.234, 0.0, 0.0625, 2.71};
  const auto v = spectral_interpolate(f, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(v[i] == doctest::Approx(std::exp(-0.5 * xs[i] * xs[i]) / std::sqrt(2.0 * kPi)).epsilon(1e-12));
  }
  const RealField shifted = spectral_translate(f, 0.3);
  CHECK(linf_distance(shifted, gaussian_1d(g, -0.3, 1.0)) < 1e-12);
}

TEST_CASE("decay guard measures boundary faces") {
  const Grid1D g = make_grid(64, 8.0);
  CHECK(is_decaying(gaussian_1d(g, 0.0, 1.0)));
  CHECK_FALSE(is_decaying(gaussian_1d(g, 0.0, 3.0)));
  CHECK_THROWS_AS(require_decaying(gaussian_1d(g, 0.0, 3.0), "wide"), DecayGuard);
}

TEST_CASE("real part extraction guards the imaginary residue") {
  const Grid1D g = make_grid(16, 8.0);
  ComplexField f({g});
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = Complex(1.0, 1e-12);
  CHECK(max_abs(real_part_checked(f, 1e-9, "small")) == 1.0);
  f[3] = Complex(1.0, 1e-3);
  CHECK_THROWS_AS(real_part_checked(f, 1e-9, "large"), ImaginaryResidue);
}

TEST_CASE("transforms are bitwise repeatable") {
  const Grid1D g = make_grid(64, 8.0);
  const RealField f = sample(g, g, [](double p, double r) { return std::exp(-p * p - r * r + 0.2 * p * r); });
  const ComplexField a = forward_transform(f, {0, 1});
  const ComplexField b = forward_transform(f, {0, 1});
  bool identical = true;
  for (std::size_t i = 0; i < a.size(); ++i) identical = identical && a[i] == b[i];
  CHECK(identical);
}
