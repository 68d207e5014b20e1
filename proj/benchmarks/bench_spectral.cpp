#include <benchmark/benchmark.h>

#include <cmath>

#include "sburgers/spectral.hpp"

using namespace sburgers;

namespace {

Field test_field(const TorusGrid& g, int components) {
  Field f(g, components);
  for (int c = 0; c < components; ++c) {
    auto phys = f.physical_mut(c);
    for (std::size_t i = 0; i < phys.size(); ++i)
      phys[i] = std::sin(0.37 * static_cast<double>(i + c));
  }
  f.ensure_spectral();
  return f;
}

}  // namespace

static void TransformRoundTrip1d(benchmark::State& state) {
  TorusGrid g(1, static_cast<int>(state.range(0)));
  Field f = test_field(g, 1);
  for (auto _ : state) {
    auto phys = f.physical_mut(0);
    phys[0] += 1e-12;  // invalidate the spectral side
    f.ensure_spectral();
    benchmark::DoNotOptimize(f.spectral(0).data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(TransformRoundTrip1d)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void Nonlinearity1d(benchmark::State& state) {
  TorusGrid g(1, static_cast<int>(state.range(0)));
  Field v = test_field(g, 1);
  for (auto _ : state) {
    Field out = nonlinearity(v, -1.0);
    benchmark::DoNotOptimize(out.spectral(0).data());
  }
}
BENCHMARK(Nonlinearity1d)->Arg(128)->Arg(512);

static void Nonlinearity2d(benchmark::State& state) {
  TorusGrid g(2, static_cast<int>(state.range(0)));
  Field v = test_field(g, 2);
  for (auto _ : state) {
    Field out = nonlinearity(v, -1.0);
    benchmark::DoNotOptimize(out.spectral(0).data());
  }
}
BENCHMARK(Nonlinearity2d)->Arg(32)->Arg(64)->Arg(128);

static void HeatSemigroup2d(benchmark::State& state) {
  TorusGrid g(2, 64);
  Field f = test_field(g, 2);
  for (auto _ : state) {
    Field out = heat_semigroup_apply(f, 1e-3);
    benchmark::DoNotOptimize(out.spectral(0).data());
  }
}
BENCHMARK(HeatSemigroup2d);

static void LpNorm(benchmark::State& state) {
  TorusGrid g(1, 512);
  Field f = test_field(g, 1);
  const double p = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lp_norm(f, p));
}
BENCHMARK(LpNorm)->Arg(2)->Arg(3);
