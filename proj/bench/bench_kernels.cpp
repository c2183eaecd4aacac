// Serial vs OpenMP kernels. Run with OMP_NUM_THREADS to vary the team size.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sta/kernels.hpp"
#include "sta/scenarios.hpp"

using namespace sta;

namespace {

std::vector<Multivector> batch(std::size_t n, unsigned seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Multivector> out(n);
  for (auto& m : out)
    for (int k = 0; k < kBladeCount; ++k) m[k] = u(g);
  return out;
}

std::vector<Rotor> rotors(std::size_t n) {
  std::mt19937_64 g(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Rotor> out(n);
  for (auto& r : out) r = boost_rotor({u(g), u(g), u(g)}) * euler_rotor({3 * u(g), 1.5 + u(g), 3 * u(g)});
  return out;
}

std::vector<double> grid(std::size_t n, double T) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = T * static_cast<double>(i) / static_cast<double>(n - 1);
  return t;
}

template <auto Kernel>
void BM_product(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = batch(n, 1), b = batch(n, 2);
  std::vector<Multivector> out(n);
  for (auto _ : state) {
    Kernel(a, b, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

template <auto Kernel>
void BM_observables(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto r = rotors(n);
  std::vector<kernels::Observables> out(n);
  for (auto _ : state) {
    Kernel(r, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

template <auto Kernel>
void BM_rates(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto traj = make_trajectory({BoostedPrecession{1.0, 1.0471975511965976, 0.0, 0.5}, 1.0, 100});
  const auto t = grid(n, 1.0);
  for (auto _ : state) {
    auto s = Kernel(*traj, t);
    benchmark::DoNotOptimize(s.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}

}  // namespace

BENCHMARK(BM_product<kernels::geometric_product_serial>)->Name("geometric_product/serial")->Range(1 << 10, 1 << 18);
BENCHMARK(BM_product<kernels::geometric_product_parallel>)->Name("geometric_product/parallel")->Range(1 << 10, 1 << 18);
BENCHMARK(BM_observables<kernels::observables_serial>)->Name("observables/serial")->Range(1 << 10, 1 << 16);
BENCHMARK(BM_observables<kernels::observables_parallel>)->Name("observables/parallel")->Range(1 << 10, 1 << 16);
BENCHMARK(BM_rates<kernels::sample_rates_serial>)->Name("sample_rates/serial")->Range(1 << 10, 1 << 15);
BENCHMARK(BM_rates<kernels::sample_rates_parallel>)->Name("sample_rates/parallel")->Range(1 << 10, 1 << 15);

BENCHMARK_MAIN();
