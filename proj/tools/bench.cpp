// Serial reference vs OpenMP kernels: order-matrix assembly, torus grid
// tabulation, and the dual elliptic evaluations.

#include <benchmark/benchmark.h>

#include "ecms/elliptic.hpp"
#include "ecms/oracle.hpp"
#include "ecms/quadrature.hpp"

using namespace ecms;

namespace {

void bm_assembly(benchmark::State& state, Exec exec) {
  Coupling c(3, Rat(2));
  JackEngine engine(c);
  BasisWindow win(c, 8);
  wk_matrix(2, win, engine, Exec::Serial);  // warm the cache outside the loop
  for (auto _ : state) {
    OrderKMatrix m = wk_matrix(2, win, engine, exec);
    benchmark::DoNotOptimize(m.columns.data());
  }
}

void bm_tabulate(benchmark::State& state, Exec exec) {
  Coupling c(3, Rat(2));
  JackEngine engine(c);
  QuadratureGrid grid(c, 96);
  const SymPoly& f = engine.jack(Weight(3, {3, 1, 0})).expansion;
  for (auto _ : state) {
    auto v = tabulate(f, grid, exec);
    benchmark::DoNotOptimize(v.data());
  }
}

void bm_wp_grid(benchmark::State& state, Exec exec) {
  std::vector<double> xs(64), out(64);
  for (int i = 0; i < 64; ++i) xs[i] = 0.3 + 0.04 * i;
  Nome nome(0.05);
  auto tau = nome.tau();
  for (auto _ : state) {
    parallel_for(exec, 64, [&](std::ptrdiff_t i) {
      out[i] = wp_lattice({xs[i], 0.0}, tau, 40).real();
    });
    benchmark::DoNotOptimize(out.data());
  }
}

void bm_jack_build(benchmark::State& state) {
  for (auto _ : state) {
    JackEngine engine(Coupling(4, Rat(5, 2)));
    const JackPolynomial& j = engine.jack(Weight(4, {5, 2, 1, 0}));
    benchmark::DoNotOptimize(&j);
  }
}

}  // namespace

BENCHMARK_CAPTURE(bm_assembly, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_assembly, openmp, Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_tabulate, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_tabulate, openmp, Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_wp_grid, serial, Exec::Serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_wp_grid, openmp, Exec::Parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_jack_build)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
