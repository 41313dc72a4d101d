#include <benchmark/benchmark.h>

#include "metamatrix/engine.hpp"
#include "metamatrix/positivity.hpp"
#include "metamatrix/typeb.hpp"

using namespace metamatrix;

namespace {

void BM_NTableF4(benchmark::State &state) {
  const CoxeterSystem sys = build_system(Family::F, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(accumulate_ntable(sys));
}
BENCHMARK(BM_NTableF4)->Unit(benchmark::kMillisecond);

void BM_NTableE6(benchmark::State &state) {
  const CoxeterSystem sys = build_system(Family::E, 6);
  AccumulateOptions o;
  o.strategy = state.range(0) ? EnumerationStrategy::Tower : EnumerationStrategy::Bfs;
  for (auto _ : state)
    benchmark::DoNotOptimize(accumulate_ntable(sys, o));
}
BENCHMARK(BM_NTableE6)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_NTableE7Tower(benchmark::State &state) {
  const CoxeterSystem sys = build_system(Family::E, 7);
  AccumulateOptions o;
  o.strategy = EnumerationStrategy::Tower;
  for (auto _ : state)
    benchmark::DoNotOptimize(accumulate_ntable(sys, o));
}
BENCHMARK(BM_NTableE7Tower)->Unit(benchmark::kMillisecond);

void BM_BareissPascal(benchmark::State &state) {
  const ExactMatrix a = pascal_matrix(static_cast<std::size_t>(state.range(0)));
  const ExactMatrix b = a * a.transpose();
  for (auto _ : state)
    benchmark::DoNotOptimize(bareiss_det(b));
}
BENCHMARK(BM_BareissPascal)->Arg(4)->Arg(8)->Arg(16);

void BM_AllMinorsTypeB(benchmark::State &state) {
  const ExactMatrix m = metamatrix_typeB(static_cast<int>(state.range(0))).to_exact_matrix();
  for (auto _ : state)
    benchmark::DoNotOptimize(all_minors_positive(m));
}
BENCHMARK(BM_AllMinorsTypeB)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_FeketeTypeB(benchmark::State &state) {
  const ExactMatrix m = metamatrix_typeB(static_cast<int>(state.range(0))).to_exact_matrix();
  for (auto _ : state)
    benchmark::DoNotOptimize(fekete_check(m));
}
BENCHMARK(BM_FeketeTypeB)->Arg(8)->Arg(16);

void BM_TypeBFormula(benchmark::State &state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(metamatrix_typeB(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TypeBFormula)->Arg(4)->Arg(8)->Arg(16);

} // namespace

BENCHMARK_MAIN();
