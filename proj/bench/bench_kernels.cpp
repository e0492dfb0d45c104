// Serial reference loops versus the OpenMP kernels. Thread count follows
// OMP_NUM_THREADS; the parallel variants produce identical results.

#include <benchmark/benchmark.h>

#include "rcubic/probability.hpp"
#include "rcubic/verification.hpp"

namespace {

using namespace rcubic;

const DensitySpec kStdGauss{GaussianDiagonal{0.0, 0.0, 1.0, 1.0}};

const std::vector<RStarRecord>& batch() {
  static const std::vector<RStarRecord> records = serial::simulate_rstar_batch(kStdGauss, 1 << 20, 1);
  return records;
}

const EventProbabilities& probs() {
  static const EventProbabilities p = estimate_quadrature(kStdGauss, 1e-8, Execution::Serial);
  return p;
}

void BM_SimulateSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::simulate_rstar_batch(kStdGauss, state.range(0), 2));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SimulateParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_rstar_batch(kStdGauss, state.range(0), 2));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HistogramSerial(benchmark::State& state) {
  const auto xe = linear_edges(-2.0, 2.0, 40);
  const auto ye = linear_edges(0.0, 3.0, 40);
  batch();  // build the shared sample outside the timed loop
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::conditional_histogram(batch(), Event::D, xe, ye));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(batch().size()));
}

void BM_HistogramParallel(benchmark::State& state) {
  const auto xe = linear_edges(-2.0, 2.0, 40);
  const auto ye = linear_edges(0.0, 3.0, 40);
  batch();  // build the shared sample outside the timed loop
  for (auto _ : state) {
    benchmark::DoNotOptimize(conditional_histogram(batch(), Event::D, xe, ye));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(batch().size()));
}

void BM_BinMassesSerial(benchmark::State& state) {
  const auto xe = linear_edges(0.0, 3.5, state.range(0));
  const auto ye = linear_edges(-1.5, 3.0, state.range(0));
  probs();
  for (auto _ : state) {
    benchmark::DoNotOptimize(serial::analytic_bin_masses(Event::K, kStdGauss, probs(), xe, ye, 1e-7));
  }
}

void BM_BinMassesParallel(benchmark::State& state) {
  const auto xe = linear_edges(0.0, 3.5, state.range(0));
  const auto ye = linear_edges(-1.5, 3.0, state.range(0));
  probs();
  for (auto _ : state) {
    benchmark::DoNotOptimize(analytic_bin_masses(Event::K, kStdGauss, probs(), xe, ye, 1e-7));
  }
}

void BM_EstimateMcSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(serial::estimate_mc(kStdGauss, state.range(0), 3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EstimateMcParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(estimate_mc(kStdGauss, state.range(0), 3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_QuadratureSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_quadrature(kStdGauss, 1e-9, Execution::Serial));
  }
}

void BM_QuadratureParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_quadrature(kStdGauss, 1e-9, Execution::Parallel));
  }
}

}  // namespace

BENCHMARK(BM_SimulateSerial)->Arg(1 << 20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulateParallel)->Arg(1 << 20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HistogramSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistogramParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BinMassesSerial)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BinMassesParallel)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EstimateMcSerial)->Arg(1 << 22)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateMcParallel)->Arg(1 << 22)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_QuadratureSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadratureParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
