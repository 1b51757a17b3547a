#include <benchmark/benchmark.h>

#include "sswave/energy.hpp"
#include "sswave/evolve.hpp"
#include "sswave/family.hpp"
#include "sswave/geometry.hpp"
#include "sswave/harmonics.hpp"
#include "sswave/hypergeom.hpp"
#include "sswave/sampling.hpp"
#include "sswave/spectral.hpp"
#include "sswave/sphere_basis.hpp"

namespace {

using namespace sswave;

void BM_GradientOnBall(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const BallGrid grid = ball_grid(N, 8);
  Rng rng(1);
  const StatePair u = random_bandlimited_state(grid, rng, 4, 4);
  for (auto _ : state) benchmark::DoNotOptimize(gradient_on_ball(grid, u.f1));
}
BENCHMARK(BM_GradientOnBall)->Arg(16)->Arg(32);

void BM_AnalyzeSynthesize(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const BallGrid grid = ball_grid(N, 8);
  const SphereBasis basis = sphere_basis(grid.sphere, 8);
  Rng rng(2);
  const StatePair u = random_bandlimited_state(grid, rng, 4, 4);
  for (auto _ : state) {
    const ModalField m = analyze(grid, basis, u.f1, 8);
    benchmark::DoNotOptimize(synthesize(grid, basis, m));
  }
}
BENCHMARK(BM_AnalyzeSynthesize)->Arg(16)->Arg(32);

void BM_NonlinearRhs(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const BallGrid grid = ball_grid(N, 8);
  const StatePair psi = profile_psi_a(grid, 5.0, Vec3(0.0, 0.0, 0.1));
  EvolutionConfig cfg;
  cfg.p = 5.0;
  cfg.mode = EvolveMode::nonlinear;
  for (auto _ : state) benchmark::DoNotOptimize(rhs(grid, psi, cfg));
}
BENCHMARK(BM_NonlinearRhs)->Arg(16)->Arg(24);

void BM_NormTotal(benchmark::State& state) {
  const BallGrid grid = ball_grid(24, 8);
  Rng rng(3);
  const StatePair u = random_bandlimited_state(grid, rng, 4, 4);
  for (auto _ : state) benchmark::DoNotOptimize(norm_total(grid, u));
}
BENCHMARK(BM_NormTotal);

void BM_Gauss2F1(benchmark::State& state) {
  const HypergeomParams par{1.3, -0.7, 2.1};
  double z = 0.51;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gauss_2f1(par, z));
    z += 1e-6;
    if (z > 0.95) z = 0.51;
  }
}
BENCHMARK(BM_Gauss2F1);

void BM_AssembleAxisym(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(assemble_axisym_operator(7.0, 0.15, 20, 8));
}
BENCHMARK(BM_AssembleAxisym);

void BM_EvolveStep(benchmark::State& state) {
  const BallGrid grid = ball_grid(24, 8);
  const StatePair psi = profile_psi_a(grid, 5.0, Vec3(0.0, 0.0, 0.1));
  EvolutionConfig cfg;
  cfg.p = 5.0;
  cfg.mode = EvolveMode::nonlinear;
  cfg.axisymmetric = true;
  cfg.diagnostics = DiagnosticsLevel::light;
  for (auto _ : state) {
    EvolutionConfig one = cfg;
    one.tau_max = 64.0 * kCflLimit / (24 * 24 + 8 * 8);
    benchmark::DoNotOptimize(integrate(grid, psi, one));
  }
}
BENCHMARK(BM_EvolveStep);

}  // namespace

BENCHMARK_MAIN();
