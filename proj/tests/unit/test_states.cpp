#include <doctest.h>

#include <cmath>
#include <numbers>

#include "moyalkit/coupling.hpp"
#include "moyalkit/states.hpp"

using namespace moyalkit;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct Presets {
  Grid1D g = make_grid(64, 8.0);
  VirtualDensity rho = gaussian_density(g, 0.0, 1.0);
  WignerDistribution W = gaussian_wigner(g, g, 0.0, 0.0, kInvSqrt2, kInvSqrt2);
};

// Standard error of the mean of x over the samples.
std::pair<double, double> mean_and_error(const std::vector<JointSample>& s, std::size_t axis) {
  double m = 0.0, m2 = 0.0;
  for (const auto& v : s) {
    m += v[axis];
    m2 += v[axis] * v[axis];
  }
  const auto n = static_cast<double>(s.size());
  m /= n;
  const double var = m2 / n - m * m;
  return {m, std::sqrt(var / n)};
}

}  // namespace

TEST_CASE("gaussian_density normalization and variance") {
  const Grid1D g = make_grid(128, 8.0);
  const VirtualDensity rho = gaussian_density(g, 0.0, 1.0);
  CHECK(std::abs(integrate(rho.field()) - 1.0) < 1e-8);
  const MomentSet m = moments(rho, {{0}, {2}, {4}});
  CHECK(std::abs(m.at({0}) - 1.0) < 1e-7);
  CHECK(std::abs(m.at({2}) - 1.0) < 1e-6);
  CHECK(std::abs(m.at({4}) - 3.0) < 1e-5);
}

TEST_CASE("gaussian presets reject boxes that cannot hold them") {
  const Grid1D g = make_grid(128, 8.0);
  CHECK_THROWS_AS(gaussian_density(g, 6.0, 1.0), DecayGuard);
  CHECK_THROWS_AS(gaussian_density(g, 0.0, -1.0), InvalidArgument);
  CHECK_THROWS_AS(gaussian_wigner(g, g, 0.0, 7.5, 0.5, 0.5), DecayGuard);
}

TEST_CASE("gaussian_wigner normalization and momentum variance") {
  const Grid1D g = make_grid(128, 8.0);
  const WignerDistribution W = gaussian_wigner(g, g, 0.0, 0.0, kInvSqrt2, kInvSqrt2);
  CHECK(std::abs(W.normalization() - 1.0) < 1e-8);
  const MomentSet m = moments(W, {{2, 0}, {0, 2}});
  CHECK(std::abs(m.at({2, 0}) - 0.5) < 1e-6);
  CHECK(std::abs(m.at({0, 2}) - 0.5) < 1e-6);
  // sigma_r sigma_p = 1/2: the minimum-uncertainty preset at hbar = 1 is a valid state
  CHECK_NOTHROW(gaussian_wigner(g, g, 0.0, 0.0, 0.5, 1.0));
}

TEST_CASE("gaussian presets are normalized on the grid even when it is coarse") {
  // n = 16 on L = 8 under-samples these Gaussians; the closed-form
  // normalization would miss 1 by about 2e-4.
  const Grid1D g = make_grid(16, 8.0);
  CHECK(std::abs(gaussian_wigner(g, g, 0.0, 0.0, kInvSqrt2, kInvSqrt2).normalization() - 1.0) <
        1e-14);
  CHECK(std::abs(integrate(gaussian_density(g, 0.3, 0.6).field()) - 1.0) < 1e-14);
}

TEST_CASE("distribution constructors validate their invariants") {
  const Grid1D g = make_grid(32, 8.0);
  RealField neg = sample(g, [](double x) { return std::exp(-x * x) / std::sqrt(std::numbers::pi); });
  neg(16) = -1e-6;
  CHECK_THROWS_AS(VirtualDensity::from_samples(neg), InvalidArgument);

  RealField unnormalized = sample(g, [](double x) { return std::exp(-x * x); });
  CHECK_THROWS_AS(VirtualDensity::from_samples(unnormalized), InvalidArgument);

  const Grid1D other = make_grid(32, 6.0);
  RealField F({g, g, other});
  CHECK_THROWS_AS(JointDistribution::from_samples(F, 0.0), GridMismatch);

  // A signed Wigner function is accepted.
  const RealField signed_w = sample(g, g, [](double p, double r) {
    const double s = p * p + r * r;
    return (2.0 * s - 1.0) * std::exp(-s) / std::numbers::pi;
  });
  CHECK_NOTHROW(WignerDistribution::from_samples(signed_w));
}

TEST_CASE("moments of a shifted Gaussian obey the binomial shift identity") {
  const Grid1D g = make_grid(128, 8.0);
  const double mu = 0.75;
  const VirtualDensity centred = gaussian_density(g, 0.0, 0.9);
  const VirtualDensity shifted = gaussian_density(g, mu, 0.9);
  const MomentSet c = moments(centred, {{0}, {1}, {2}, {3}, {4}});
  const MomentSet s = moments(shifted, {{4}});
  // <(x+mu)^4> = sum_k C(4,k) mu^(4-k) <x^k>
  const double binom[5] = {1, 4, 6, 4, 1};
  double expect = 0.0;
  for (int k = 0; k <= 4; ++k) expect += binom[k] * std::pow(mu, 4 - k) * c.at({k});
  CHECK(std::abs(s.at({4}) - expect) < 1e-5);
}

TEST_CASE("moments are linear and reject excessive orders") {
  const Grid1D g = make_grid(64, 8.0);
  const RealField a = sample(g, [](double x) { return std::exp(-x * x); });
  const RealField b = sample(g, [](double x) { return x * x * std::exp(-x * x); });
  const MomentSet ma = moments(a, {{2}}), mb = moments(b, {{2}});
  const MomentSet mab = moments(a * 2.0 + b * 3.0, {{2}});
  CHECK(mab.at({2}) == doctest::Approx(2.0 * ma.at({2}) + 3.0 * mb.at({2})).epsilon(1e-13));
  CHECK_THROWS_AS(moments(a, {{9}}), InvalidArgument);
  const Presets p;
  CHECK_THROWS_AS(moments(classical_joint(p.rho, p.W), {{5, 4}}), InvalidArgument);
}

TEST_CASE("marginals of the classical joint recover the factors") {
  const Presets p;
  const JointDistribution F = classical_joint(p.rho, p.W);
  CHECK(linf_distance(marginal_over_R(F).field(), p.W.field()) < 1e-12);
  CHECK(linf_distance(marginal_over_pr(F).field(), p.rho.field()) < 1e-12);
}

TEST_CASE("marginals of the quantum joint recover the inputs") {
  // hbar = 1 needs a box wider than 8 for F itself to decay
  const Grid1D g = make_grid(64, 10.0);
  const VirtualDensity rho = gaussian_density(g, 0.0, 1.0);
  const WignerDistribution W = gaussian_wigner(g, g, 0.0, 0.0, kInvSqrt2, kInvSqrt2);
  const JointDistribution F = quantum_joint_spectral(rho, W, 1.0);
  CHECK(linf_distance(marginal_over_R(F).field(), W.field()) < 1e-8);
  CHECK(linf_distance(marginal_over_pr(F).field(), rho.field()) < 1e-8);

  const JointDistribution F0 = quantum_joint_spectral(rho, W, 0.0);
  CHECK(linf_distance(marginal_over_R(F0).field(), W.field()) < 1e-12);
  CHECK(linf_distance(marginal_over_pr(F0).field(), rho.field()) < 1e-12);
}

TEST_CASE("sample_joint reproduces the mean of a classical joint") {
  const Grid1D g = make_grid(32, 8.0);
  const VirtualDensity rho = gaussian_density(g, 0.4, 0.9);
  const WignerDistribution W = gaussian_wigner(g, g, -0.3, 0.2, 0.8, 0.9);
  const JointDistribution F = classical_joint(rho, W);
  const auto s = sample_joint(F, 1'000'000, 7);
  const MomentSet m = moments(F, {{1, 0}, {0, 1}});
  const auto [mR, eR] = mean_and_error(s, 0);
  const auto [mp, ep] = mean_and_error(s, 1);
  CHECK(std::abs(mR - m.at({1, 0})) < 4.0 * eR);
  CHECK(std::abs(mp - m.at({0, 1})) < 4.0 * ep);
}

TEST_CASE("sample_joint is reproducible per seed and seeds agree statistically") {
  const Presets p;
  const JointDistribution F = classical_joint(p.rho, p.W);
  const auto a = sample_joint(F, 100'000, 11);
  const auto b = sample_joint(F, 100'000, 11);
  const auto c = sample_joint(F, 100'000, 12);
  CHECK(a == b);
  CHECK(a != c);
  const auto [ma, ea] = mean_and_error(a, 2);
  const auto [mc, ec] = mean_and_error(c, 2);
  CHECK(std::abs(ma - mc) < 3.0 * std::hypot(ea, ec));
}

TEST_CASE("sample_joint preconditions") {
  const Presets p;
  CHECK_THROWS_AS(sample_joint(classical_joint(p.rho, p.W), 0, 1), InvalidArgument);
  // Large hbar gives F genuine negative lobes.
  const Grid1D g = make_grid(64, 12.0);
  const VirtualDensity rho = gaussian_density(g, 0.0, 1.0);
  const WignerDistribution W = gaussian_wigner(g, g, 0.0, 0.0, kInvSqrt2, kInvSqrt2);
  const JointDistribution F = quantum_joint_spectral(rho, W, 4.0);
  double lo = 0.0, hi = 0.0;
  for (double v : F.field().values()) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  REQUIRE(lo < -1e-9 * hi);
  CHECK_THROWS_AS(sample_joint(F, 10, 1), SignedDensity);
}

TEST_CASE("spectral tail ratio flags under-resolved fields") {
  const Presets p;
  CHECK(spectral_tail_ratio(classical_joint(p.rho, p.W).field()) < 1e-10);
  const Grid1D coarse = make_grid(16, 8.0);
  const VirtualDensity rho = gaussian_density(coarse, 0.0, 1.0);
  CHECK(spectral_tail_ratio(rho.field()) > 1e-10);
}
