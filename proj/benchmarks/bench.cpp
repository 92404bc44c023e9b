#include <benchmark/benchmark.h>

#include <random>

#include "semired/langton.hpp"
#include "semired/random_instance.hpp"

using namespace semired;

namespace {

FilteredSpace random_filtered(std::mt19937_64& rng, std::uint32_t p, std::size_t n, std::size_t s) {
  const PrimeField f{p};
  FilteredSpace x{f, n, {}};
  for (std::size_t i = 0; i < s; ++i) {
    FpMat basis(n, n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) basis(a, b) = static_cast<std::uint32_t>(rng() % p);
    x.chains.push_back({FpSubspace(f, n, basis.row_block(0, n / 2 + 1)), FpSubspace(f, n, basis.row_block(0, 1))});
  }
  return x;
}

}  // namespace

static void BM_EnumerateSubspaces(benchmark::State& state) {
  const PrimeField f{static_cast<std::uint32_t>(state.range(0))};
  const auto n = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    std::size_t count = 0;
    for_each_subspace(f, n, std::nullopt, kDefaultEnumerationCap, [&](const FpSubspace&) {
      ++count;
      return true;
    });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_EnumerateSubspaces)->Args({2, 4})->Args({2, 6})->Args({3, 4});

static void BM_MaxDestabilizer(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const auto x = random_filtered(rng, static_cast<std::uint32_t>(state.range(0)), state.range(1), 3);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(max_destabilizer(x));
    } catch (const std::exception&) {
    }
  }
}
BENCHMARK(BM_MaxDestabilizer)->Args({2, 4})->Args({3, 4})->Args({2, 5});

static void BM_Smith(benchmark::State& state) {
  std::mt19937_64 rng(6);
  const auto n = static_cast<std::size_t>(state.range(0));
  const ChainRing ring(2, 8);
  ChainMat a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = static_cast<unsigned long>(rng() % 256);
  for (auto _ : state) benchmark::DoNotOptimize(smith(ring, a));
}
BENCHMARK(BM_Smith)->Arg(4)->Arg(8)->Arg(16);

static void BM_MaxLiftOrder(benchmark::State& state) {
  KFiltration fil{2,
                  {{KSubspace(2, QMat::from_rows({{Rational(1), Rational(0)}}, 2))},
                   {KSubspace(2, QMat::from_rows({{Rational(1), Rational(1L << state.range(0))}}, 2))}}};
  const Lattice l = Lattice::standard(2);
  const auto seq = make_reduction_sequence(l, fil, max_destabilizer(residue_filtration(l, fil, 2)).subspace, 2);
  for (auto _ : state) benchmark::DoNotOptimize(max_lift_order(seq));
}
BENCHMARK(BM_MaxLiftOrder)->Arg(1)->Arg(5)->Arg(20);

static void BM_LangtonRunFuzz(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::vector<std::pair<RandomInstance, QMat>> cases;
  while (cases.size() < 20) {
    const auto inst = random_instance(rng, {});
    if (!inst) continue;
    if (generic_semistability(inst->filtration, inst->p).verdict != GenericStability::Verdict::Semistable) continue;
    cases.emplace_back(*inst, random_lattice_basis(rng, inst->filtration.n, inst->p));
  }
  for (auto _ : state)
    for (const auto& [inst, basis] : cases)
      benchmark::DoNotOptimize(langton_run(inst.filtration, inst.p, Lattice(basis)));
}
BENCHMARK(BM_LangtonRunFuzz)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
