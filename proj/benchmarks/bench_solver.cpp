// bench_solver.cpp — hot paths of the solver: fraction evaluation, backward
// recursion, residual confirmation, tridiagonal and dense eigensolvers, and
// the full scan-rescue-refine spectrum pass.
#include <benchmark/benchmark.h>

#include "rabicf/contfrac.hpp"
#include "rabicf/model.hpp"
#include "rabicf/oracle.hpp"
#include "rabicf/recurrence.hpp"
#include "rabicf/spectrum.hpp"

namespace {

namespace model = rabicf::model;

model::ModelParams two_mode() {
  model::ModelParams p;
  p.family = model::Family::TwoMode;
  p.omega = 1.0;
  p.delta = 0.7;
  p.g = 0.5;
  return p;
}

model::ModelParams two_photon() {
  model::ModelParams p;
  p.family = model::Family::KPhoton;
  p.k = 2;
  p.omega = 1.0;
  p.delta = 0.3;
  p.g = 0.2;
  return p;
}

const model::SectorLabel kHalfPlus{{1, 2}, model::Parity::Plus};
const model::SectorLabel kQuarterPlus{{1, 4}, model::Parity::Plus};

void BM_SpectralFunction(benchmark::State& state) {
  const auto params = two_mode();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rabicf::contfrac::spectral_function(params, kHalfPlus, 2.345));
  }
}
BENCHMARK(BM_SpectralFunction);

void BM_SpectralFunctionK2(benchmark::State& state) {
  const auto params = two_photon();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rabicf::contfrac::spectral_function(params, kQuarterPlus, 2.345));
  }
}
BENCHMARK(BM_SpectralFunctionK2);

void BM_BackwardMinimal(benchmark::State& state) {
  const auto params = two_mode();
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rabicf::recurrence::backward_minimal(params, kHalfPlus, 0.342, depth, 0));
  }
}
BENCHMARK(BM_BackwardMinimal)->Arg(200)->Arg(2000);

void BM_PincherleResidual(benchmark::State& state) {
  const auto params = two_mode();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rabicf::recurrence::pincherle_residual(params, kHalfPlus, 2.345));
  }
}
BENCHMARK(BM_PincherleResidual);

void BM_LevelsBelow(benchmark::State& state) {
  const auto params = two_mode();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rabicf::recurrence::levels_below(params, kHalfPlus, 8.0, 400));
  }
}
BENCHMARK(BM_LevelsBelow);

void BM_TridiagonalEigs(benchmark::State& state) {
  const auto params = two_mode();
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto tri = rabicf::oracle::build_sector_tridiagonal(params, kHalfPlus, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rabicf::oracle::eigs_tridiagonal(tri, 6));
  }
}
BENCHMARK(BM_TridiagonalEigs)->Arg(100)->Arg(400);

void BM_DenseJacobiEigs(benchmark::State& state) {
  const auto params = two_mode();
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto dense = rabicf::oracle::build_full_block(params, {1, 2}, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rabicf::oracle::eigs_dense_symmetric(dense));
  }
}
BENCHMARK(BM_DenseJacobiEigs)->Arg(50)->Arg(100);

void BM_ComputeSpectrum(benchmark::State& state) {
  const auto params = two_mode();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rabicf::spectrum::compute_spectrum(params, kHalfPlus, -1.0, 12.0, 280));
  }
}
BENCHMARK(BM_ComputeSpectrum);

}  // namespace

BENCHMARK_MAIN();
