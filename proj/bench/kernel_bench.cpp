#include <benchmark/benchmark.h>

#include <vector>

#include "dqaoa/generators.hpp"
#include "dqaoa/kernels.hpp"
#include "dqaoa/qaoa.hpp"

namespace {

using namespace dqaoa;

IsingModel graph(int n) { return gen_er(n, 4.0, true, {1, 6}, 42); }

template <void (*Diag)(const IsingModel&, std::span<double>)>
void BM_Diagonal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const IsingModel m = graph(n);
  std::vector<double> diag(std::size_t{1} << n);
  for (auto _ : state) {
    Diag(m, diag);
    benchmark::DoNotOptimize(diag.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(diag.size()));
}

template <void (*Mixer)(std::span<Amplitude>, int, double)>
void BM_Mixer(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Statevector s = uniform_state(n);
  for (auto _ : state) {
    Mixer(s, n, 0.37);
    benchmark::DoNotOptimize(s.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}

template <void (*Phase)(std::span<Amplitude>, double, std::span<const double>)>
void BM_Phase(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Statevector s = uniform_state(n);
  const std::vector<double> diag = hamiltonian_diagonal(graph(n));
  for (auto _ : state) {
    Phase(s, 0.21, diag);
    benchmark::DoNotOptimize(s.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}

template <double (*Expect)(std::span<const Amplitude>, std::span<const double>)>
void BM_Expectation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Statevector s = uniform_state(n);
  const std::vector<double> diag = hamiltonian_diagonal(graph(n));
  for (auto _ : state) benchmark::DoNotOptimize(Expect(s, diag));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}

template <GroundState (*Brute)(const IsingModel&)>
void BM_BruteForce(benchmark::State& state) {
  const IsingModel m = graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Brute(m).value);
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

}  // namespace

BENCHMARK(BM_Diagonal<kernels::serial::hamiltonian_diagonal>)->Name("diagonal/serial")->DenseRange(12, 18, 3);
BENCHMARK(BM_Diagonal<kernels::omp::hamiltonian_diagonal>)->Name("diagonal/omp")->DenseRange(12, 18, 3);
BENCHMARK(BM_Phase<kernels::serial::apply_phase>)->Name("phase/serial")->DenseRange(12, 18, 3);
BENCHMARK(BM_Phase<kernels::omp::apply_phase>)->Name("phase/omp")->DenseRange(12, 18, 3);
BENCHMARK(BM_Mixer<kernels::serial::apply_mixer>)->Name("mixer/serial")->DenseRange(12, 18, 3);
BENCHMARK(BM_Mixer<kernels::omp::apply_mixer>)->Name("mixer/omp")->DenseRange(12, 18, 3);
BENCHMARK(BM_Expectation<kernels::serial::expectation>)->Name("expectation/serial")->DenseRange(12, 18, 3);
BENCHMARK(BM_Expectation<kernels::omp::expectation>)->Name("expectation/omp")->DenseRange(12, 18, 3);
BENCHMARK(BM_BruteForce<kernels::serial::brute_force_min>)->Name("brute_force/serial")->DenseRange(14, 20, 3);
BENCHMARK(BM_BruteForce<kernels::omp::brute_force_min>)->Name("brute_force/omp")->DenseRange(14, 20, 3);

BENCHMARK_MAIN();
