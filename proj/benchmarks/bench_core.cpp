#include <benchmark/benchmark.h>

#include <cmath>

#include "moyalkit/coupling.hpp"
#include "moyalkit/cumulants.hpp"
#include "moyalkit/dynamics.hpp"
#include "moyalkit/spectral.hpp"

using namespace moyalkit;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

struct Inputs {
  explicit Inputs(std::size_t n)
      : g(make_grid(n, 8.0)),
        rho(gaussian_density(g, 0.0, 1.0)),
        W(gaussian_wigner(g, g, 0.0, 0.0, kInvSqrt2, kInvSqrt2)) {}
  Grid1D g;
  VirtualDensity rho;
  WignerDistribution W;
};

void BM_ForwardTransform3D(benchmark::State& state) {
  const Inputs in(static_cast<std::size_t>(state.range(0)));
  const JointDistribution F = classical_joint(in.rho, in.W);
  for (auto _ : state) benchmark::DoNotOptimize(forward_transform(F.field(), {0, 1, 2}));
}
BENCHMARK(BM_ForwardTransform3D)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_JointSpectral(benchmark::State& state) {
  const Inputs in(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quantum_joint_spectral(in.rho, in.W, 0.5));
}
BENCHMARK(BM_JointSpectral)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_JointSeries(benchmark::State& state) {
  const Inputs in(64);
  const double hbar = static_cast<double>(state.range(0)) / 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(quantum_joint_series(in.rho, in.W, hbar));
}
BENCHMARK(BM_JointSeries)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CollisionRhs(benchmark::State& state) {
  const Inputs in(64);
  const JointDistribution F = quantum_joint_spectral(in.rho, in.W, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(collision_rhs(F, 1.0, 1.0));
}
BENCHMARK(BM_CollisionRhs)->Unit(benchmark::kMillisecond);

void BM_MoyalRhs(benchmark::State& state) {
  const Inputs in(128);
  const Potential U = Potential::quartic(0.5, 0.1);
  const bool spectral = state.range(0) != 0;
  for (auto _ : state) {
    if (spectral) {
      benchmark::DoNotOptimize(moyal_rhs_spectral(in.W, U, 1.0, 1.0));
    } else {
      benchmark::DoNotOptimize(moyal_rhs_series(in.W, U, 1.0, 1.0));
    }
  }
}
BENCHMARK(BM_MoyalRhs)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// 100 harmonic split steps on the n2 grid.
void BM_Propagate(benchmark::State& state) {
  const Inputs in(static_cast<std::size_t>(state.range(0)));
  EvolutionParams p;
  p.steps = 100;
  p.snapshot_every = 100;
  p.method = state.range(1) ? KickMethod::SpectralKernel : KickMethod::Series;
  const Potential U = Potential::harmonic(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(propagate(in.W, U, p));
  state.SetItemsProcessed(state.iterations() * p.steps);
}
BENCHMARK(BM_Propagate)->Args({128, 0})->Args({128, 1})->Unit(benchmark::kMillisecond);

void BM_Kappa22(benchmark::State& state) {
  const Inputs in(64);
  const JointDistribution F = quantum_joint_spectral(in.rho, in.W, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(kappa22(F));
}
BENCHMARK(BM_Kappa22)->Unit(benchmark::kMillisecond);

void BM_CumulantReport(benchmark::State& state) {
  const Inputs in(64);
  for (auto _ : state) benchmark::DoNotOptimize(cumulant_report(in.rho, in.W, 0.5));
}
BENCHMARK(BM_CumulantReport)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
