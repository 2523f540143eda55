// Serial reference vs OpenMP for the two dense kernels.
#include <benchmark/benchmark.h>

#include "fbbm/lattice.hpp"
#include "fbbm/profiles.hpp"
#include "fbbm/quartic_forms.hpp"
#include "fbbm/rng.hpp"

using namespace fbbm;

namespace {

LatticeSeries field(int n_modes, int support) {
  Rng rng(1);
  return LatticeSeries::from_field(random_band_limited(GridSpec(n_modes, kTwoPi * 16), support, rng));
}

void bilinear(benchmark::State& st, Exec exec) {
  const int n = static_cast<int>(st.range(0));
  const LatticeSeries f = field(n, n / 3);
  const SymbolGrid m(0.5, kTwoPi / (kTwoPi * 16), 2 * f.radius(), Exec::serial);
  std::vector<cd> out(4 * f.radius() + 1);
  for (auto _ : st) {
    kernels::bilinear_sum(f.data(), f.radius(), f.data(), f.radius(), m, out, exec);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetComplexityN(n);
}

void triple(benchmark::State& st, Exec exec) {
  const int n = static_cast<int>(st.range(0));
  const LatticeSeries f = field(n, n / 3);
  const SymbolGrid m(0.5, kTwoPi / (kTwoPi * 16), 2 * f.radius(), Exec::serial);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::f10_g10_triple(f, 2, m, exec));
  st.SetComplexityN(n);
}

}  // namespace

BENCHMARK_CAPTURE(bilinear, serial, Exec::serial)->RangeMultiplier(2)->Range(64, 512)->Complexity();
BENCHMARK_CAPTURE(bilinear, parallel, Exec::parallel)->RangeMultiplier(2)->Range(64, 512)->Complexity();
BENCHMARK_CAPTURE(triple, serial, Exec::serial)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(triple, parallel, Exec::parallel)->RangeMultiplier(2)->Range(32, 128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
