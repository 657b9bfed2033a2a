#include <benchmark/benchmark.h>

#include <random>

#include "fixtures.hpp"
#include "multfree/cones.hpp"
#include "multfree/exactlinalg.hpp"
#include "multfree/extsheaf.hpp"
#include "multfree/groupcoh.hpp"

using namespace multfree;

static void BM_Snf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> entry(-20, 20);
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
  for (auto _ : state) benchmark::DoNotOptimize(snf(m));
}
BENCHMARK(BM_Snf)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

static void BM_CohomologyTorus(benchmark::State& state) {
  const auto degree = static_cast<std::size_t>(state.range(0));
  const LatticeModule m = fixtures::product_sign(2);
  for (auto _ : state) benchmark::DoNotOptimize(cohomology_torus(m, degree));
}
BENCHMARK(BM_CohomologyTorus)->Arg(1)->Arg(2);

static void BM_CohomologyLattice(benchmark::State& state) {
  const LatticeModule m = fixtures::product_sign(2);
  for (auto _ : state) benchmark::DoNotOptimize(cohomology_lattice(m, 2));
}
BENCHMARK(BM_CohomologyLattice);

static void BM_CylinderSections(benchmark::State& state) {
  for (auto _ : state) {
    const CylinderCaseStudy cs = build_cylinder_case_study();
    benchmark::DoNotOptimize(enumerate_global_sections(cs.diagram));
  }
}
BENCHMARK(BM_CylinderSections);

static void BM_ConeSmooth(benchmark::State& state) {
  const ConeData c(3, {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}});
  for (auto _ : state) benchmark::DoNotOptimize(is_smooth(c));
}
BENCHMARK(BM_ConeSmooth);
BENCHMARK_MAIN();
