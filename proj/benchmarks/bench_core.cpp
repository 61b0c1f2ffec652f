#include <benchmark/benchmark.h>

#include <vector>

#include "genus1/lasserre.hpp"
#include "genus1/sdp.hpp"
#include "genus1/soscurve.hpp"
#include "genus1/tangent.hpp"

using namespace genus1;

namespace {

// Margin SDP on the free 2k x 2k moment pencil of y^2 = 1 - x^4.
void BM_MaxMarginPencil(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const PencilProblem p = build_pencil(CurveParams{0.0, 1.0}, SubspaceSpec::linear(), k).problem();
  for (auto _ : state) benchmark::DoNotOptimize(solve_max_margin(p).margin);
  state.SetLabel("size " + std::to_string(2 * k));
}
BENCHMARK(BM_MaxMarginPencil)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_StabilityConstant(benchmark::State& state) {
  // (a, b) with N = 2, 3, 4, 5, 8 (the last is gamma_curve(32))
  static const std::vector<CurveParams> curves{{0.0, 1.0}, {1.0, 1.0}, {1.5, 0.6}, gamma_curve(8.0), gamma_curve(32.0)};
  const CurveParams c = curves[static_cast<std::size_t>(state.range(0))];
  int n = 0;
  for (auto _ : state) n = stability_constant(c.a, c.b).N;
  state.SetLabel("N=" + std::to_string(n));
}
BENCHMARK(BM_StabilityConstant)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

void BM_BuildPencil(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_pencil(CurveParams{0.3, 0.8}, SubspaceSpec::linear(), k).size());
  }
}
BENCHMARK(BM_BuildPencil)->RangeMultiplier(2)->Range(2, 16);

void BM_Membership(benchmark::State& state) {
  const MomentPencil p = build_pencil(CurveParams{0.0, 1.0}, SubspaceSpec::linear(), 2);
  const std::vector<double> coords{0.3, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(membership(p, coords).margin);
}
BENCHMARK(BM_Membership)->Unit(benchmark::kMicrosecond);

void BM_GammaMax(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gamma_max(n));
}
BENCHMARK(BM_GammaMax)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_TangentCertificate(benchmark::State& state) {
  const CurveParams c{0.0, 2.0};
  const SosCertificate base = base_certificate(stability_constant(c.a, c.b));
  const RealPoint p{0.5, 1.299038105676658};  // y^2 = (1 - 0.25)(0.25 + 2)
  for (auto _ : state) benchmark::DoNotOptimize(decompose_tangent(c, p, base).sos.residual);
}
BENCHMARK(BM_TangentCertificate)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
