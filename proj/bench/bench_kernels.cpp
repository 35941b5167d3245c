// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <span>

#include "fockweyl/entangled.hpp"
#include "fockweyl/fock.hpp"
#include "fockweyl/quadrature.hpp"
#include "fockweyl/validation.hpp"

using namespace fockweyl;

namespace {

ExponentSpec tripartite() {
  return entangled::multipartite_exponent({0.5, {0.3, -0.6}, mass::MassPartition({1, 1, 2})});
}

void BM_exponent_parallel(benchmark::State& state) {
  const BasisSpec basis(3, static_cast<int>(state.range(0)));
  const auto e = tripartite();
  for (auto _ : state) benchmark::DoNotOptimize(apply_exponent_to_vacuum(basis, e));
}

void BM_exponent_reference(benchmark::State& state) {
  const BasisSpec basis(3, static_cast<int>(state.range(0)));
  const auto e = tripartite();
  for (auto _ : state) benchmark::DoNotOptimize(reference::apply_exponent_to_vacuum(basis, e));
}

const auto gaussian = [](std::span<const double> x) {
  return std::exp(-x[0] * x[0] - 0.5 * x[1] * x[1] + 0.3 * x[0] * x[1]);
};

void BM_integrate_parallel(benchmark::State& state) {
  const auto grid = quadrature::MidpointGrid::cube(2, 8.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quadrature::integrate(grid, gaussian, 0.0));
}

void BM_integrate_reference(benchmark::State& state) {
  const auto grid = quadrature::MidpointGrid::cube(2, 8.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quadrature::reference::integrate(grid, gaussian, 0.0));
}

void BM_completeness_eta(benchmark::State& state) {
  const auto family = validation::eta_family(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(validation::completeness_deviation(family, {6.0, 61}, 2));
}

}  // namespace

BENCHMARK(BM_exponent_parallel)->Arg(6)->Arg(8);
BENCHMARK(BM_exponent_reference)->Arg(6)->Arg(8);
BENCHMARK(BM_integrate_parallel)->Arg(401)->Arg(801);
BENCHMARK(BM_integrate_reference)->Arg(401)->Arg(801);
BENCHMARK(BM_completeness_eta)->Arg(8)->Arg(12);

BENCHMARK_MAIN();
