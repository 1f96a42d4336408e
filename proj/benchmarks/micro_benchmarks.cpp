#include <benchmark/benchmark.h>

#include "lrrt/lrrt.hpp"

namespace {

lrrt::Tree random_tree(int n, lrrt::SplitMix64& rng) {
  lrrt::Tree tree({128.0, 128.0});
  for (int i = 1; i < n; ++i)
    tree.add({rng.uniform() * 256.0, rng.uniform() * 256.0}, static_cast<int>(rng.below(static_cast<std::uint64_t>(i))));
  return tree;
}

void BM_NearestLinear(benchmark::State& state) {
  lrrt::SplitMix64 rng(1);
  const lrrt::Tree tree = random_tree(static_cast<int>(state.range(0)), rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(lrrt::nearest(tree, {rng.uniform() * 256.0, rng.uniform() * 256.0}));
}
BENCHMARK(BM_NearestLinear)->Arg(1000)->Arg(10000);

void BM_NearestGrid(benchmark::State& state) {
  lrrt::SplitMix64 rng(1);
  const lrrt::Tree tree = random_tree(static_cast<int>(state.range(0)), rng);
  lrrt::NearestIndex index(256.0, 256.0, 12.0);
  for (int i = 0; i < tree.size(); ++i) index.insert(i, tree.node(i).position);
  for (auto _ : state)
    benchmark::DoNotOptimize(index.nearest(tree, {rng.uniform() * 256.0, rng.uniform() * 256.0}));
}
BENCHMARK(BM_NearestGrid)->Arg(1000)->Arg(10000);

void BM_ObstacleFree(benchmark::State& state) {
  const lrrt::WorkspaceMap map = lrrt::rasterize(lrrt::generate_maze(35, 7), 7, 256);
  lrrt::SplitMix64 rng(2);
  for (auto _ : state) {
    const lrrt::Point a{rng.uniform() * 256.0, rng.uniform() * 256.0};
    const lrrt::Point b = lrrt::steer(a, {rng.uniform() * 256.0, rng.uniform() * 256.0}, 6.0);
    benchmark::DoNotOptimize(lrrt::obstacle_free(map, a, b));
  }
}
BENCHMARK(BM_ObstacleFree);

void BM_PlanMaze(benchmark::State& state) {
  const double alpha = static_cast<double>(state.range(0)) / 10.0;
  const lrrt::GridMaze maze = lrrt::generate_maze(25, 11);
  const lrrt::WorkspaceMap map = lrrt::rasterize(maze, 8, 256);
  const lrrt::SampleSupport support =
      lrrt::build_support(lrrt::classify(lrrt::oracle_region(maze, 8, 256)), map);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    lrrt::PlannerConfig config;
    config.alpha = alpha;
    config.rng_seed = ++seed;
    benchmark::DoNotOptimize(lrrt::plan(map, &support, config));
  }
}
BENCHMARK(BM_PlanMaze)->Arg(0)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
