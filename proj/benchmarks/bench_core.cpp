#include <benchmark/benchmark.h>

#include "iflow/dynamics.hpp"
#include "iflow/operators.hpp"
#include "iflow/poisson.hpp"

namespace {

using namespace iflow;

VectorField shear_vortex(const GridSpec& spec) {
  return sample_analytic([](double x, double y) { return -std::sin(y) * std::cos(x); },
                         [](double x, double y) { return std::sin(y) * std::cos(x); },
                         spec);
}

void BM_Divergence(benchmark::State& state) {
  const GridSpec spec(static_cast<int>(state.range(0)));
  const VectorField v = shear_vortex(spec);
  for (auto _ : state) {
    ScalarField d = divergence(v);
    benchmark::DoNotOptimize(d.values().data());
  }
}
BENCHMARK(BM_Divergence)->Arg(30)->Arg(60)->Arg(120)->Arg(240);

void BM_Laplacian(benchmark::State& state) {
  const GridSpec spec(static_cast<int>(state.range(0)));
  const ScalarField phi =
      sample_analytic([](double x, double y) { return std::sin(x) * std::cos(y); }, spec);
  for (auto _ : state) {
    ScalarField l = laplacian(phi);
    benchmark::DoNotOptimize(l.values().data());
  }
}
BENCHMARK(BM_Laplacian)->Arg(30)->Arg(60)->Arg(120)->Arg(240);

void BM_PoissonIterative(benchmark::State& state) {
  const GridSpec spec(static_cast<int>(state.range(0)));
  const VectorField v = shear_vortex(spec);
  const ScalarField rhs = divergence(v);
  for (auto _ : state) {
    PoissonSolution sol = poisson_solve(rhs);
    benchmark::DoNotOptimize(sol.residual);
  }
}
BENCHMARK(BM_PoissonIterative)->Arg(30)->Arg(60)->Arg(120);

void BM_PoissonSpectral(benchmark::State& state) {
  const GridSpec spec(static_cast<int>(state.range(0)));
  const VectorField v = shear_vortex(spec);
  const ScalarField rhs = divergence(v);
  PoissonConfig cfg;
  cfg.method = PoissonMethod::Spectral;
  for (auto _ : state) {
    PoissonSolution sol = poisson_solve(rhs, cfg);
    benchmark::DoNotOptimize(sol.residual);
  }
}
BENCHMARK(BM_PoissonSpectral)->Arg(30)->Arg(60)->Arg(120);

void BM_StepVelocityPerStep(benchmark::State& state) {
  const GridSpec spec(static_cast<int>(state.range(0)));
  SimState s;
  s.velocity = shear_vortex(spec);
  StepConfig cfg;
  cfg.dt = 1e-3;
  const ObstaclePotential pot{{7.0, 7.0}, 0.5, 1.0, 1e-6};
  for (auto _ : state) {
    SimState next = step_velocity(s, cfg, pot);
    benchmark::DoNotOptimize(next.t);
  }
}
BENCHMARK(BM_StepVelocityPerStep)->Arg(30)->Arg(60);

void BM_AdvectTracers(benchmark::State& state) {
  const GridSpec spec(30);
  const VectorField v = shear_vortex(spec);
  std::vector<Vec2> tracers;
  const int m = static_cast<int>(state.range(0));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      tracers.push_back({a * spec.length() / m, b * spec.length() / m});
    }
  }
  for (auto _ : state) {
    std::vector<Vec2> moved = advect_tracers(tracers, v, 1e-3);
    benchmark::DoNotOptimize(moved.data());
  }
}
BENCHMARK(BM_AdvectTracers)->Arg(20)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
