#include <benchmark/benchmark.h>

#include <lpdc/lpdc.hpp>

using namespace lpdc;

namespace {

CrystalConfig tapered(double fraction) {
  CrystalConfig c;
  c.length = 0.02;
  c.dispersion = DispersionModel::group_velocity_mismatch(kDefaultGroupIndexMismatch);
  c.loss = LossProfile::two_region(0.02, fraction * 0.02, 1100.0, 60.0);
  return validate_config(c);
}

void BM_Expm2(benchmark::State& state) {
  const Matrix2c m{cplx(87.0, 3e3), cplx(0.0, -1e-4), cplx(0.0, 1e-4), cplx(29.77, -3e3)};
  double dz = 0.008;
  for (auto _ : state) {
    benchmark::DoNotOptimize(expm2(m, dz));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_Expm2);

void BM_FrequencyResponse(benchmark::State& state) {
  const auto c = tapered(0.6);
  const auto method = state.range(0) ? KernelQuadrature::simpson : KernelQuadrature::exact;
  double w = 1.3e12;
  for (auto _ : state) benchmark::DoNotOptimize(frequency_response(c, w, {method, 64}));
  state.SetLabel(state.range(0) ? "simpson" : "exact");
}
BENCHMARK(BM_FrequencyResponse)->Arg(0)->Arg(1);

void BM_Spectrum(benchmark::State& state) {
  const auto c = tapered(0.6);
  const auto grid = build_grid(c, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(c, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Spectrum)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_HomScanLattice(benchmark::State& state) {
  const auto c = tapered(0.9);
  const auto s = spectrum(c, build_grid(c, static_cast<std::size_t>(state.range(0))));
  const auto range = default_delay_range(c, s);
  for (auto _ : state) benchmark::DoNotOptimize(hom_scan_lattice(c, s, range));
}
BENCHMARK(BM_HomScanLattice)->Arg(4096)->Arg(16384)->Unit(benchmark::kMillisecond);

void BM_HomScanDirect(benchmark::State& state) {
  const auto c = tapered(0.9);
  const auto s = spectrum(c, build_grid(c, 16384));
  const auto range = default_delay_range(c, s);
  for (auto _ : state) benchmark::DoNotOptimize(hom_scan(c, s, range, 201));
}
BENCHMARK(BM_HomScanDirect)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
