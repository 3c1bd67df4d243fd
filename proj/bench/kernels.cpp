// Serial reference vs OpenMP kernels.  Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include <cmath>

#include "emkdv/oscillatory_asymptotics.hpp"
#include "emkdv/painleve_sector.hpp"
#include "emkdv/pde_reference.hpp"
#include "emkdv/spectral_scattering.hpp"

namespace {

using namespace emkdv;

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void bm_scattering(benchmark::State& st) {
  const auto u0 = InitialProfile::sech(0.3);
  KGridSpec g;
  g.half_width = 2.0;
  g.step = 0.02;
  g.auto_extend = false;
  for (auto _ : st) benchmark::DoNotOptimize(compute_scattering(u0, g, 1e-12, 1e-8, exec_of(st)));
}
BENCHMARK(bm_scattering)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void bm_nonlinear_term(benchmark::State& st) {
  SpectralGrid g{600.0, 16384};
  std::vector<double> u(g.N);
  for (std::size_t j = 0; j < g.N; ++j) u[j] = 0.3 / std::cosh(g.x(j));
  for (auto _ : st) benchmark::DoNotOptimize(nonlinear_term(u, ModelParams{}, g, exec_of(st)));
}
BENCHMARK(bm_nonlinear_term)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void bm_painleve_grid(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(solve_painleve_grid(0.3, -0.5, 0.5, 0.05, {}, exec_of(st)));
}
BENCHMARK(bm_painleve_grid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void bm_leading_order_batch(benchmark::State& st) {
  static const ReflectionData data = [] {
    KGridSpec g;
    g.half_width = 1.0;
    g.auto_extend = false;
    return compute_scattering(InitialProfile::sech(0.3), g, 1e-12);
  }();
  std::vector<XT> q;
  for (int i = 0; i < 16; ++i) q.push_back({-0.2 * (100.0 + i), 100.0 + i});
  for (auto _ : st) benchmark::DoNotOptimize(leading_order_batch(q, data, ModelParams{}, {}, exec_of(st)));
}
BENCHMARK(bm_leading_order_batch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
