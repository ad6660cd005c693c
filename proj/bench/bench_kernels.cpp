#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "ssp/kernels.hpp"
#include "ssp/spatial.hpp"

namespace k = ssp::kernels;

namespace {

std::vector<double> smooth(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = 1.0 + 0.2 * std::sin(6.283185307179586 * static_cast<double>(j) / static_cast<double>(n));
  return v;
}

template <auto Kernel>
void weno(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const int order = static_cast<int>(state.range(1));
  const auto g = smooth(n);
  std::vector<double> out(n);
  const auto& tables = k::weno_tables(order);
  for (auto _ : state) {
    Kernel(tables, k::WenoBias::Plus, g, 1.0 / static_cast<double>(n), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void upwind(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = smooth(n);
  std::vector<double> out(n);
  for (auto _ : state) {
    Kernel(g, 1.0 / static_cast<double>(n), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void matvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = ssp::spectral_matrix(n);
  const auto g = smooth(n);
  std::vector<double> out(n);
  for (auto _ : state) {
    Kernel(d, g, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void weno_args(benchmark::internal::Benchmark* b) {
  for (long n : {160, 1280, 5120, 81920})
    for (long order : {5, 7, 9}) b->Args({n, order});
}

}  // namespace

BENCHMARK(weno<&k::serial::weno_derivative>)->Name("weno/serial")->Apply(weno_args);
BENCHMARK(weno<&k::omp::weno_derivative>)->Name("weno/omp")->Apply(weno_args);
BENCHMARK(upwind<&k::serial::upwind_difference>)->Name("upwind/serial")->Arg(1600)->Arg(102400);
BENCHMARK(upwind<&k::omp::upwind_difference>)->Name("upwind/omp")->Arg(1600)->Arg(102400);
BENCHMARK(matvec<&k::serial::dense_matvec>)->Name("spectral/serial")->Arg(41)->Arg(1025);
BENCHMARK(matvec<&k::omp::dense_matvec>)->Name("spectral/omp")->Arg(41)->Arg(1025);

BENCHMARK_MAIN();
