#include <doctest.h>

#include <cmath>
#include <numbers>

#include "moyalkit/coupling.hpp"
#include "moyalkit/cumulants.hpp"
#include "moyalkit/oracles.hpp"
#include "moyalkit/spectral.hpp"

using namespace moyalkit;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct Presets {
  Grid1D g = make_grid(64, 8.0);
  VirtualDensity rho = gaussian_density(g, 0.0, 1.0);
  WignerDistribution W = gaussian_wigner(g, g, 0.0, 0.0, kInvSqrt2, kInvSqrt2);
};

}  // namespace

TEST_CASE("coupling kernel special values") {
  const auto at0 = coupling_kernel(0.0);
  CHECK(at0.sinc_value == 1.0);
  REQUIRE(at0.log_sinc_value.has_value());
  CHECK(*at0.log_sinc_value == 0.0);

  CHECK(coupling_kernel(std::numbers::pi / 2).sinc_value ==
        doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-15));
  CHECK_FALSE(coupling_kernel(std::numbers::pi).log_sinc_value.has_value());
  CHECK_FALSE(coupling_kernel(-2.0 * std::numbers::pi).log_sinc_value.has_value());
  CHECK_FALSE(coupling_kernel(4.0).log_sinc_value.has_value());  // sinc < 0
  CHECK_THROWS_AS(coupling_kernel(std::nan("")), InvalidArgument);
}

TEST_CASE("log sinc against the extended-precision Taylor oracle") {
  for (double x : {0.1, 1e-5, 5e-4, 0.7, 2.5}) {
    const auto s = coupling_kernel(x);
    REQUIRE(s.log_sinc_value.has_value());
    CHECK(std::abs(*s.log_sinc_value - oracle::log_sinc_taylor(x)) < 1e-12);
  }
}

TEST_CASE("coupling kernel is even and continuous across the series switch") {
  for (double x : {1e-6, 3e-5, 0.2, 1.7, 5.1}) {
    const auto a = coupling_kernel(x), b = coupling_kernel(-x);
    CHECK(a.sinc_value == b.sinc_value);
    CHECK(a.log_sinc_value == b.log_sinc_value);
  }
  for (double x : {0.99999e-4, 1.00001e-4}) {
    const long double xl = x;
    CHECK(std::abs(coupling_kernel(x).sinc_value - static_cast<double>(std::sin(xl) / xl)) < 1e-16);
  }
}

TEST_CASE("classical joint is the normalized outer product") {
  const Presets p;
  const JointDistribution F = classical_joint(p.rho, p.W);
  CHECK(F.hbar_used() == 0.0);
  CHECK(std::abs(integrate(F.field()) - 1.0) < 1e-9);
  CHECK(F(10, 20, 30) == p.rho(10) * p.W(20, 30));
  double lo = 0.0;
  for (double v : F.field().values()) lo = std::min(lo, v);
  CHECK(lo >= -1e-12);

  const Grid1D other = make_grid(32, 8.0);
  const VirtualDensity rho2 = gaussian_density(other, 0.0, 1.0);
  CHECK_THROWS_AS(classical_joint(rho2, p.W), GridMismatch);
}

TEST_CASE("quantum builders reduce to the classical joint at hbar = 0") {
  const Presets p;
  const JointDistribution C = classical_joint(p.rho, p.W);
  CHECK(linf_distance(quantum_joint_series(p.rho, p.W, 0.0).field(), C.field()) < 1e-14);
  CHECK(linf_distance(quantum_joint_series(p.rho, p.W, 0.7, 0).field(), C.field()) == 0.0);
  CHECK(linf_distance(quantum_joint_spectral(p.rho, p.W, 0.0).field(), C.field()) < 1e-12);
}

TEST_CASE("series and spectral builders agree") {
  const Presets p;
  for (double hbar : {0.25, 0.5, 1.0}) {
    CAPTURE(hbar);
    const JointDistribution S = quantum_joint_series(p.rho, p.W, hbar);
    const JointDistribution K = quantum_joint_spectral(p.rho, p.W, hbar);
    CHECK(S.hbar_used() == hbar);
    CHECK(linf_distance(S.field(), K.field()) < 1e-8);
  }
}

TEST_CASE("series builder reports divergence") {
  const Presets p;
  CHECK_THROWS_AS(quantum_joint_series(p.rho, p.W, 2.0), NonConvergence);
  CHECK_NOTHROW(quantum_joint_series(p.rho, p.W, 2.0, 3));
  CHECK_THROWS_AS(quantum_joint_series(p.rho, p.W, 1.0, 21), InvalidArgument);
}

TEST_CASE("joint depends on hbar only through hbar squared") {
  const Presets p;
  const JointDistribution a = quantum_joint_spectral(p.rho, p.W, 0.5);
  const JointDistribution b = quantum_joint_spectral(p.rho, p.W, -0.5);
  CHECK(linf_distance(a.field(), b.field()) == 0.0);
  CHECK(b.hbar_used() == 0.5);
  const JointDistribution c = quantum_joint_series(p.rho, p.W, -0.5);
  CHECK(linf_distance(c.field(), quantum_joint_series(p.rho, p.W, 0.5).field()) == 0.0);
}

TEST_CASE("spectral builder reproduces the sinc kernel in its characteristic function") {
  const Presets p;
  const double hbar = 0.5;
  const JointDistribution F = quantum_joint_spectral(p.rho, p.W, hbar);
  const CharacteristicField Ft = characteristic_function(F);
  const ComplexField rt = forward_transform(p.rho.field(), {0});
  const ComplexField wt = forward_transform(p.W.field(), {0, 1});
  double dmax = 0.0;
  for (std::size_t iK = 0; iK < Ft.K.size(); ++iK) {
    for (std::size_t i = 0; i < wt.size(); ++i) dmax = std::max(dmax, std::abs(rt(iK) * wt[i]));
  }
  double err = 0.0, sym = 0.0;
  std::size_t count = 0;
  for (std::size_t iK = 1; iK < Ft.K.size(); ++iK) {
    for (std::size_t iq = 1; iq < Ft.q.size(); ++iq) {
      for (std::size_t ik = 1; ik < Ft.k.size(); ++ik) {
        const Complex d = rt(iK) * wt(iq, ik);
        if (std::abs(d) <= 1e-6 * dmax) continue;
        const double x = 0.5 * hbar * Ft.K.frequency(iK) * Ft.q.frequency(iq);
        err = std::max(err, std::abs(Ft.at(iK, iq, ik) / d - coupling_kernel(x).sinc_value));
        const Complex mirrored = Ft.at(Ft.K.mirror(iK), Ft.q.mirror(iq), Ft.k.mirror(ik));
        sym = std::max(sym, std::abs(mirrored - std::conj(Ft.at(iK, iq, ik))));
        ++count;
      }
    }
  }
  CHECK(count > 1000);
  CHECK(err < 1e-8);
  CHECK(sym < 1e-10);
}

TEST_CASE("distance from the classical joint scales as hbar squared") {
  const Presets p;
  const JointDistribution C = classical_joint(p.rho, p.W);
  const double d1 = linf_distance(quantum_joint_spectral(p.rho, p.W, 0.125).field(), C.field());
  const double d2 = linf_distance(quantum_joint_spectral(p.rho, p.W, 0.25).field(), C.field());
  CHECK(std::log2(d2 / d1) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("joint builders are bitwise repeatable") {
  const Presets p;
  const auto a = quantum_joint_spectral(p.rho, p.W, 0.5);
  const auto b = quantum_joint_spectral(p.rho, p.W, 0.5);
  CHECK(a.field().values() == b.field().values());
  const auto c = quantum_joint_series(p.rho, p.W, 0.5);
  const auto d = quantum_joint_series(p.rho, p.W, 0.5);
  CHECK(c.field().values() == d.field().values());
}
