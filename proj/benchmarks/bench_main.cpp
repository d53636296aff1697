#include <benchmark/benchmark.h>

#include "diamond/analysis.hpp"
#include "diamond/stochastics.hpp"

using namespace diamond;

static void BM_BuildLevel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_level(n).vertex_count());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(edge_count_at(n)));
}
BENCHMARK(BM_BuildLevel)->DenseRange(2, 7)->Unit(benchmark::kMillisecond);

static void BM_DistanceField(benchmark::State& state) {
  const auto g = build_level(static_cast<int>(state.range(0)));
  const auto center = PointAddress::midpoint_of(g.word(g.edge_count() / 3));
  for (auto _ : state) benchmark::DoNotOptimize(DistanceField(g, center).to_vertex(1));
}
BENCHMARK(BM_DistanceField)->DenseRange(3, 6)->Unit(benchmark::kMicrosecond);

static void BM_BallCover(benchmark::State& state) {
  const auto g = build_level(6);
  const DistanceField field(g, PointAddress::midpoint_of(g.word(g.edge_count() / 3)));
  const auto r = Length::one().scaled(1, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ball_cover(field, r).segments.size());
}
BENCHMARK(BM_BallCover)->Arg(4)->Arg(64)->Arg(1024)->Unit(benchmark::kMicrosecond);

static void BM_TotalVariation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MeasureSpec a(0.1), b(0.9);
  for (auto _ : state) benchmark::DoNotOptimize(tv_distance(n, a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(edge_count_at(n)));
}
BENCHMARK(BM_TotalVariation)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_SamplePath(benchmark::State& state) {
  const MeasureSpec m(0.3);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_path(++seed, m, state.range(0)).counters[0]);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SamplePath)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_PoincareTrial(benchmark::State& state) {
  const auto g = build_level(static_cast<int>(state.range(0)));
  const auto radii = radius_grid(g.level());
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(poincare_estimate(g, MeasureSpec(0.3), 1, 2.0, radii, ++seed).max_ratio);
}
BENCHMARK(BM_PoincareTrial)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
