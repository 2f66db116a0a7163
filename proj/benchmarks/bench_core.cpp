#include "gabinv/invariance.hpp"
#include "gabinv/sis.hpp"
#include "gabinv/windows.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace gabinv;

namespace {

ComplexVector random_vector(std::int64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexVector v(static_cast<std::size_t>(n));
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

const RationalLattice kBase = RationalLattice::parse("4,0;0,2");

void BM_FiniteZak(benchmark::State& state) {
  const std::int64_t L = state.range(0);
  const auto split = ZakSplit::make(L, 4);
  const auto f = random_vector(L, 1);
  for (auto _ : state) benchmark::DoNotOptimize(finite_zak(f, split));
  state.SetComplexityN(L);
}
BENCHMARK(BM_FiniteZak)->RangeMultiplier(4)->Range(32, 8192)->Complexity();

void BM_ConditionD(benchmark::State& state) {
  const std::int64_t scale = state.range(0);
  const GridShape grid({4 * scale, 8 * scale});
  ZakGrid z(grid, ComplexVector(grid.size()));
  for (std::size_t f = 0; f < grid.size(); ++f) {
    const auto n = grid.node(f);
    if (n[0] < 2 * scale && n[1] < 2 * scale) z[f] = 1;
  }
  const auto tilde = RationalLattice::integer(2);
  for (auto _ : state) benchmark::DoNotOptimize(condition_d(z, kBase, tilde));
  state.SetComplexityN(static_cast<std::int64_t>(grid.size()));
}
BENCHMARK(BM_ConditionD)->RangeMultiplier(2)->Range(1, 16)->Complexity();

void BM_BruteForceOracle(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  const std::int64_t L = N * 2 * N;
  const auto split = ZakSplit::make(L, N);
  const FiniteGaborModel model(split, kBase.scaled({N, 2 * N}), random_vector(L, 2));
  for (auto _ : state) {
    const auto basis = space_basis(gabor_matrix(model));
    benchmark::DoNotOptimize(brute_force_lattice_invariant(model, basis, RationalLattice::integer(2)));
  }
}
BENCHMARK(BM_BruteForceOracle)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

void BM_Projection(benchmark::State& state) {
  const std::int64_t N = state.range(0);
  const std::int64_t L = N * 2 * N;
  const auto split = ZakSplit::make(L, N);
  const FiniteGaborModel model(split, kBase.scaled({N, 2 * N}), random_vector(L, 3));
  const auto f = random_vector(L, 4);
  for (auto _ : state) benchmark::DoNotOptimize(project(f, model));
}
BENCHMARK(BM_Projection)->DenseRange(2, 16, 2);

void BM_IntermediateLattices(benchmark::State& state) {
  const auto n = state.range(0);
  const auto lattice = RationalLattice::diagonal({Rational(n), Rational(n)});
  for (auto _ : state) benchmark::DoNotOptimize(intermediate_lattices(lattice, RationalLattice::integer(2)));
}
BENCHMARK(BM_IntermediateLattices)->Arg(2)->Arg(4)->Arg(6)->Arg(8)->Arg(12);

void BM_SisCondition(benchmark::State& state) {
  const std::int64_t L = state.range(0);
  const auto phat = dft(random_vector(L, 5));
  for (auto _ : state) benchmark::DoNotOptimize(sis_condition_d(phat, L / 4, 1));
}
BENCHMARK(BM_SisCondition)->RangeMultiplier(4)->Range(16, 4096);

}  // namespace

BENCHMARK_MAIN();
