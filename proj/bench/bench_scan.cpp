#include <benchmark/benchmark.h>

#include "rotqfi/designer.hpp"
#include "rotqfi/scan.hpp"

namespace {

using namespace rotqfi;

ScanGrid bench_grid(int n) { return {{AxisRange{0.0, 2.0 * kPi, n}, AxisRange{0.05, kPi - 0.05, n}, AxisRange::fixed(0.4)}}; }

const SpinState& bench_state() {
  static const SpinState s = psi4_family(12, 2.0 / 9.0);
  return s;
}

void BM_ScanSerial(benchmark::State& st) {
  const ScanGrid g = bench_grid(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(singularity_scan_serial(bench_state(), RotationKind::EulerXYZ, g));
  st.SetItemsProcessed(static_cast<int64_t>(st.iterations() * g.size()));
}

void BM_ScanOpenMP(benchmark::State& st) {
  const ScanGrid g = bench_grid(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(singularity_scan(bench_state(), RotationKind::EulerXYZ, g));
  st.SetItemsProcessed(static_cast<int64_t>(st.iterations() * g.size()));
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanOpenMP)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
