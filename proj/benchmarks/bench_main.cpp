#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "cdyson/conformal.hpp"
#include "cdyson/fokker_planck.hpp"
#include "cdyson/gas.hpp"
#include "cdyson/partition.hpp"
#include "cdyson/sde.hpp"

namespace {

using namespace cdyson;

std::shared_ptr<const Contour> bench_ellipse() {
  static auto contour = Contour::build(ContourSpec::ellipse(2.0, 1.0), 1024);
  return contour;
}

Configuration equispaced(const std::shared_ptr<const Contour>& contour, std::size_t n) {
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = contour->length() * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return Configuration(contour, s);
}

void FrameLookup(benchmark::State& state) {
  const auto contour = bench_ellipse();
  double s = 1.234;
  for (auto _ : state) {
    benchmark::DoNotOptimize(contour->frame_at(s));
    s += 0.37;
  }
}
BENCHMARK(FrameLookup);

void DriftEvaluation(benchmark::State& state) {
  const auto contour = bench_ellipse();
  const auto n = static_cast<std::size_t>(state.range(0));
  GasParams p(n, 2.0, Potential::harmonic({0.5}));
  const auto cfg = equispaced(contour, n);
  for (auto _ : state) benchmark::DoNotOptimize(drift(cfg, p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(DriftEvaluation)->RangeMultiplier(4)->Range(8, 512)->Complexity();

void SdeStep(benchmark::State& state) {
  const auto contour = bench_ellipse();
  const std::size_t n = 8;
  GasParams p(n, 2.0);
  SdeSettings settings;
  settings.dt = 1e-4;
  settings.seed = 1;
  RngStream rng(settings.seed);
  Configuration cfg = equispaced(contour, n);
  for (auto _ : state) {
    cfg = sde_step(cfg, p, settings, rng);
    benchmark::DoNotOptimize(cfg);
  }
}
BENCHMARK(SdeStep);

void TheodorsenSolve(benchmark::State& state) {
  const auto contour = bench_ellipse();
  ConformalSettings settings;
  settings.modes = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_maps(contour, settings));
}
BENCHMARK(TheodorsenSolve)->Arg(256)->Arg(512)->Arg(1024);

void Fp1dStep(benchmark::State& state) {
  const auto contour = bench_ellipse();
  GasParams p(1, 2.0, Potential::harmonic({0.5}));
  const std::size_t n = 512;
  const Fp1dOperator op(*contour, p, n);
  std::vector<double> density(n, 1.0 / contour->length());
  const double dt = 0.45 * op.stable_dt();
  for (auto _ : state) {
    const auto rhs = op.adjoint(density);
    for (std::size_t j = 0; j < n; ++j) density[j] += dt * rhs[j];
    benchmark::DoNotOptimize(density);
  }
}
BENCHMARK(Fp1dStep);

void PartitionQuadrature(benchmark::State& state) {
  const auto circle = Contour::build(ContourSpec::circle({0.0, 0.0}, 1.0), 256);
  GasParams p(3, 2.0);
  QuadratureSettings q;
  q.nodes = static_cast<std::size_t>(state.range(0));
  q.symmetry_reduction = true;
  for (auto _ : state) benchmark::DoNotOptimize(log_z_quadrature(*circle, p, q));
}
BENCHMARK(PartitionQuadrature)->Arg(128)->Arg(256);

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
