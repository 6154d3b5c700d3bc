#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "regdiff/lattice.hpp"
#include "regdiff/sheaf.hpp"

using namespace regdiff;
using namespace regdiff::test;

static void BM_ModelQuartic(benchmark::State& state) {
  DivisorSpec D = quartic_cover().divisor();
  for (auto _ : state) benchmark::DoNotOptimize(alg31(D));
}
BENCHMARK(BM_ModelQuartic)->Unit(benchmark::kMillisecond);

static void BM_ModelCubic(benchmark::State& state) {
  DivisorSpec D = cubic_cover().divisor();
  for (auto _ : state) benchmark::DoNotOptimize(alg31(D));
}
BENCHMARK(BM_ModelCubic)->Unit(benchmark::kMillisecond);

static void BM_OrderDx(benchmark::State& state) {
  const auto& vals = chain_sample();
  for (auto _ : state)
    for (const auto& v : vals) benchmark::DoNotOptimize(order_dx(v));
}
BENCHMARK(BM_OrderDx)->Unit(benchmark::kMillisecond);

static void BM_IntegralBasisQuartic(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(integral_basis(quartic_cover()));
}
BENCHMARK(BM_IntegralBasisQuartic)->Unit(benchmark::kMillisecond);

static void BM_IntegralBasisCubic(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(integral_basis(cubic_cover()));
}
BENCHMARK(BM_IntegralBasisCubic)->Unit(benchmark::kMillisecond);

static void BM_LatticeIntersection(benchmark::State& state) {
  const size_t g = static_cast<size_t>(state.range(0));
  std::mt19937_64 rng(1);
  auto random_lattice = [&] {
    for (;;) {
      std::vector<RatVec> cols(g, RatVec(g));
      for (auto& c : cols)
        for (auto& a : c) a = random_scaled_unit(rng, 2, -3, 3);
      try {
        return DiffLattice(2, std::vector<std::string>(g, "e"), cols);
      } catch (const std::invalid_argument&) {
      }
    }
  };
  DiffLattice A = random_lattice(), B = random_lattice();
  for (auto _ : state) benchmark::DoNotOptimize(intersect_lattices(A, B));
}
BENCHMARK(BM_LatticeIntersection)->Arg(3)->Arg(6)->Arg(12);
BENCHMARK_MAIN();
