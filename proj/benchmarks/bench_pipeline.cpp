#include <benchmark/benchmark.h>

#include "grpdef/analysis.hpp"
#include "grpdef/rewriting.hpp"
#include "grpdef/todd_coxeter.hpp"

using namespace grpdef;

namespace {

const Presentation& triangle_237() {
  static const Presentation p = parse_presentation("< a, b | a^2, b^3, (a b)^7 >");
  return p;
}

const QuotientWitness& witness_168() {
  static const QuotientWitness w(7, {Permutation({0, 1, 2, 4, 3, 6, 5}), Permutation({1, 3, 4, 0, 5, 2, 6})});
  return w;
}

void BM_WitnessSearch237(benchmark::State& state) {
  SearchRequest req;
  req.family = SymmetricDegrees{2, 8};
  for (auto _ : state) benchmark::DoNotOptimize(search_witness(triangle_237(), req));
}
BENCHMARK(BM_WitnessSearch237)->Unit(benchmark::kMillisecond);

void BM_RegularCosetTable168(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(regular_coset_table(witness_168()));
}
BENCHMARK(BM_RegularCosetTable168);

void BM_PowerAwareRewrite168(benchmark::State& state) {
  const CosetTable table = regular_coset_table(witness_168());
  for (auto _ : state) benchmark::DoNotOptimize(reidemeister_schreier_power_aware(triangle_237(), table));
}
BENCHMARK(BM_PowerAwareRewrite168)->Unit(benchmark::kMicrosecond);

void BM_FullRewrite168(benchmark::State& state) {
  const CosetTable table = regular_coset_table(witness_168());
  for (auto _ : state) benchmark::DoNotOptimize(reidemeister_schreier_full(triangle_237(), table));
}
BENCHMARK(BM_FullRewrite168)->Unit(benchmark::kMicrosecond);

void BM_SubgroupAbelianization168(benchmark::State& state) {
  const auto q = reidemeister_schreier_power_aware(triangle_237(), regular_coset_table(witness_168()));
  for (auto _ : state) benchmark::DoNotOptimize(abelian_invariants(q));
}
BENCHMARK(BM_SubgroupAbelianization168)->Unit(benchmark::kMillisecond);

void BM_CertifyLarge237(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(certify_large(triangle_237(), witness_168()));
}
BENCHMARK(BM_CertifyLarge237)->Unit(benchmark::kMillisecond);

void BM_ToddCoxeterA5(benchmark::State& state) {
  const Presentation p = parse_presentation("< a, b | a^2, b^3, (a b)^5 >");
  for (auto _ : state) benchmark::DoNotOptimize(todd_coxeter(p, {}, 100000));
}
BENCHMARK(BM_ToddCoxeterA5)->Unit(benchmark::kMicrosecond);

void BM_MaximalRoot(benchmark::State& state) {
  const Word w = Word::from_compact("abAB", 2).pow(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(maximal_root(w));
}
BENCHMARK(BM_MaximalRoot)->RangeMultiplier(4)->Range(1, 256);

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  IntegerMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = static_cast<std::int64_t>((i * 7 + j * 13) % 19) - 9;
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
