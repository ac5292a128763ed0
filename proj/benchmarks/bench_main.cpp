#include <benchmark/benchmark.h>

#include "ellhall/canonical_basis.hpp"

using namespace ellhall;

namespace {

ConvexPath path(std::vector<ClassZ> segs) { return ConvexPath::from_segments(std::move(segs)); }

// Straightening t~_(0,1) t~_(1,0) ... with a fresh engine each time, so the
// memo tables start cold.
void BM_StraightenCold(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  std::vector<ClassZ> word;
  for (int i = 0; i < n; ++i) word.push_back(i % 2 ? ClassZ{1, 0} : ClassZ{0, 1});
  for (auto _ : state) {
    RelationEngine e(RelationConfig::default_config());
    benchmark::DoNotOptimize(e.straighten(word, Slope::integer(-2)));
  }
}
BENCHMARK(BM_StraightenCold)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_OneAlpha(benchmark::State& state) {
  const ClassZ x{state.range(0), state.range(1)};
  for (auto _ : state) {
    HallAlgebra h(std::make_shared<RelationEngine>(RelationConfig::default_config()));
    benchmark::DoNotOptimize(h.one_alpha(x, Slope::integer(-2)));
  }
}
BENCHMARK(BM_OneAlpha)->Args({1, 0})->Args({2, 0})->Args({2, 1})->Unit(benchmark::kMillisecond);

void BM_KostkaTable(benchmark::State& state) {
  const ClassZ w{state.range(0), state.range(1)};
  const auto jobs = static_cast<unsigned>(state.range(2));
  for (auto _ : state) {
    HallAlgebra h(std::make_shared<RelationEngine>(RelationConfig::default_config()));
    CanonicalBasis cb(h, jobs);
    benchmark::DoNotOptimize(cb.kostka_table(w, Slope::integer(-2), Flavor::TILDE));
  }
}
BENCHMARK(BM_KostkaTable)
    ->Args({1, 1, 1})
    ->Args({2, 1, 1})
    ->Args({2, 2, 1})
    ->Args({2, 2, 4})
    ->Unit(benchmark::kMillisecond);

void BM_VerticalKostka(benchmark::State& state) {
  const auto m = state.range(0);
  for (auto _ : state) {
    HallAlgebra h(std::make_shared<RelationEngine>(RelationConfig::default_config()));
    CanonicalBasis cb(h, 1);
    benchmark::DoNotOptimize(cb.kostka_table({0, m}, Slope::integer(0), Flavor::PLAIN));
  }
}
BENCHMARK(BM_VerticalKostka)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
