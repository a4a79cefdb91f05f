// Serial-vs-OpenMP comparison for the data-parallel kernels: elementwise
// RHS products, RK4 stage combines, batched convolution oracles, and the
// full pseudospectral right-hand side.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "gch/evolve.hpp"
#include "gch/green.hpp"
#include "gch/kernels.hpp"
#include "gch/parallel.hpp"

using namespace gch;

namespace {

std::vector<double> random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = unit(rng);
  return v;
}

void BM_multiply_serial(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vec(n, 1), b = random_vec(n, 2);
  std::vector<double> out(n);
  for (auto _ : state) {
    kernels::multiply_serial(a, b, out);
    benchmark::DoNotOptimize(out.data());
    benchmark::ClobberMemory();
  }
}

void BM_multiply_omp(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto a = random_vec(n, 1), b = random_vec(n, 2);
  std::vector<double> out(n);
  for (auto _ : state) {
    kernels::multiply_omp(a, b, out);
    benchmark::DoNotOptimize(out.data());
    benchmark::ClobberMemory();
  }
}

void BM_rk4_combine_serial(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto u = random_vec(n, 1), k1 = random_vec(n, 2), k2 = random_vec(n, 3),
             k3 = random_vec(n, 4), k4 = random_vec(n, 5);
  std::vector<double> out(n);
  for (auto _ : state) {
    kernels::rk4_combine_serial(u, k1, k2, k3, k4, 1e-4, out);
    benchmark::DoNotOptimize(out.data());
    benchmark::ClobberMemory();
  }
}

void BM_rk4_combine_omp(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto u = random_vec(n, 1), k1 = random_vec(n, 2), k2 = random_vec(n, 3),
             k3 = random_vec(n, 4), k4 = random_vec(n, 5);
  std::vector<double> out(n);
  for (auto _ : state) {
    kernels::rk4_combine_omp(u, k1, k2, k3, k4, 1e-4, out);
    benchmark::DoNotOptimize(out.data());
    benchmark::ClobberMemory();
  }
}

void convolve_batch_bench(benchmark::State& state, bool parallel) {
  const bool before = parallel::enabled();
  parallel::set_enabled(parallel);
  const GreenKernel g = GreenKernel::circle();
  auto f = [](double y) { return std::sinh(2.0 * zeta(y)); };
  std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = (i + 0.37) / xs.size();
  for (auto _ : state) {
    auto out = quad_convolve_batch(g, f, KinkSet{0.0}, xs, 1e-10);
    benchmark::DoNotOptimize(out.data());
  }
  parallel::set_enabled(before);
}

void BM_convolve_batch_serial(benchmark::State& state) {
  convolve_batch_bench(state, false);
}

void BM_convolve_batch_omp(benchmark::State& state) { convolve_batch_bench(state, true); }

void rhs_bench(benchmark::State& state, bool parallel) {
  const bool before = parallel::enabled();
  parallel::set_enabled(parallel);
  const Grid grid(static_cast<int>(state.range(0)));
  SpectralOps ops(grid);
  const ModelParams p{1.0, 1.0, 2.0};
  const GridState init = mollified_peakon_initial(p, grid, Branch::Plus);
  for (auto _ : state) {
    auto rhs = semidiscrete_rhs(ops, init.u, p);
    benchmark::DoNotOptimize(rhs.data());
  }
  parallel::set_enabled(before);
}

void BM_rhs_serial(benchmark::State& state) { rhs_bench(state, false); }
void BM_rhs_omp(benchmark::State& state) { rhs_bench(state, true); }

}  // namespace

BENCHMARK(BM_multiply_serial)->Arg(1 << 12)->Arg(1 << 20);
BENCHMARK(BM_multiply_omp)->Arg(1 << 12)->Arg(1 << 20);
BENCHMARK(BM_rk4_combine_serial)->Arg(1 << 12)->Arg(1 << 20);
BENCHMARK(BM_rk4_combine_omp)->Arg(1 << 12)->Arg(1 << 20);
BENCHMARK(BM_convolve_batch_serial)->Arg(32);
BENCHMARK(BM_convolve_batch_omp)->Arg(32);
BENCHMARK(BM_rhs_serial)->Arg(1024)->Arg(4096);
BENCHMARK(BM_rhs_omp)->Arg(1024)->Arg(4096);

BENCHMARK_MAIN();
