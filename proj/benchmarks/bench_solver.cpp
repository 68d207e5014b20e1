#include <benchmark/benchmark.h>

#include <cmath>

#include "sburgers/oracle.hpp"
#include "sburgers/solver.hpp"
#include "sburgers/spectral.hpp"

using namespace sburgers;

namespace {

Field sine_velocity(const TorusGrid& g) {
  Field u(g, g.dim());
  auto phys = u.physical_mut(0);
  for (std::size_t i = 0; i < phys.size(); ++i)
    phys[i] = std::sin(kTwoPi * static_cast<double>(i) / static_cast<double>(phys.size()));
  u.ensure_spectral();
  return u;
}

}  // namespace

static void Etd1Step1d(benchmark::State& state) {
  TorusGrid g(1, static_cast<int>(state.range(0)));
  SolverConfig cfg;
  cfg.sign = -1.0;
  Field v = sine_velocity(g);
  Field z = Field::vector(g);
  for (auto _ : state) {
    Field out = etd1_step(v, z, cfg);
    benchmark::DoNotOptimize(out.spectral(0).data());
  }
}
BENCHMARK(Etd1Step1d)->Arg(128)->Arg(512);

static void OuStepDriven(benchmark::State& state) {
  TorusGrid g(1, 64);
  NoiseOperator noise = build_noise(g, 1.0, 3.0, static_cast<int>(state.range(0)), 4, 2.0);
  RngStream rng(1, 0, "bench");
  OUState s = ou_initial_state(noise);
  for (auto _ : state) {
    s = ou_step(s, 1e-3, 1.0, std::nullopt, noise, rng);
    benchmark::DoNotOptimize(s.state.spectral(0).data());
  }
}
BENCHMARK(OuStepDriven)->Arg(4)->Arg(8)->Arg(16);

static void PicardWindow(benchmark::State& state) {
  TorusGrid g(1, 128);
  SolverConfig cfg;
  cfg.nu = 0.1;
  cfg.sign = -1.0;
  cfg.dt = 1e-3;
  Field v0 = sine_velocity(g);
  std::vector<Field> z_nodes(static_cast<std::size_t>(state.range(0)) + 1,
                             Field::vector(g));
  for (auto _ : state) {
    PicardResult res = picard_window(v0, z_nodes, cfg);
    benchmark::DoNotOptimize(res.iterations);
  }
}
BENCHMARK(PicardWindow)->Arg(10)->Arg(25);

static void HopfLax1d(benchmark::State& state) {
  TorusGrid g(1, static_cast<int>(state.range(0)));
  Field psi0 = Field::scalar(g);
  {
    auto phys = psi0.physical_mut(0);
    for (int i = 0; i < g.n(); ++i) phys[i] = std::cos(g.coordinate(i));
  }
  for (auto _ : state) {
    Field out = hopf_lax_solve(psi0, 1.0, -0.5);
    benchmark::DoNotOptimize(out.physical(0).data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(HopfLax1d)->RangeMultiplier(2)->Range(128, 512)->Complexity();

BENCHMARK_MAIN();
