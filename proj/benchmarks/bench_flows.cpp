#include <benchmark/benchmark.h>

#include "weylflow/applications.hpp"
#include "weylflow/flows.hpp"
#include "weylflow/oracle.hpp"

namespace {

using namespace weylflow;

const Realization& mixed() { return find_builtin("lorentzian-mixed")->realization; }

void BM_ComputeJ(benchmark::State& state) {
  const int kmax = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_J(mixed(), kmax));
}
BENCHMARK(BM_ComputeJ)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_PowerLawClosedForm(benchmark::State& state) {
  const int kmax = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(power_law_family(3, kmax).closed_form_series(kmax));
}
BENCHMARK(BM_PowerLawClosedForm)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

void BM_WeylExp(benchmark::State& state) {
  const int kmax = static_cast<int>(state.range(0));
  const WeylElement e = exponent_of(mixed());
  for (auto _ : state) benchmark::DoNotOptimize(weyl_exp(e, kmax));
}
BENCHMARK(BM_WeylExp)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

void BM_NormalOrderingOracle(benchmark::State& state) {
  const int kmax = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_theorem1(mixed(), kmax).equal);
}
BENCHMARK(BM_NormalOrderingOracle)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
