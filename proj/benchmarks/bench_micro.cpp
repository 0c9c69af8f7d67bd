#include <benchmark/benchmark.h>

#include <vector>

#include "corrtree/dtree.hpp"
#include "corrtree/maxtree.hpp"
#include "corrtree/trainer.hpp"
#include "corrtree/wtree.hpp"

using namespace corrtree;

namespace {

std::vector<double> random_values(std::size_t count, std::uint64_t seed) {
  Rng rng(RngSpec{seed});
  std::vector<double> vals(count);
  for (auto& v : vals) v = rng.normal();
  return vals;
}

void BM_maxtree_build(benchmark::State& state) {
  const auto vals = random_values(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    MaxTree tree(vals);
    benchmark::DoNotOptimize(tree.root_max());
  }
  state.SetComplexityN(state.range(0));
}

void BM_maxtree_update(benchmark::State& state) {
  const std::size_t leaves = static_cast<std::size_t>(state.range(0));
  MaxTree tree(random_values(leaves, 2));
  Rng rng(RngSpec{3});
  for (auto _ : state) {
    tree.update_leaf(rng.below(leaves), rng.normal());
    benchmark::DoNotOptimize(tree.root_max());
  }
  state.SetComplexityN(state.range(0));
}

void BM_maxtree_query(benchmark::State& state) {
  const std::size_t leaves = static_cast<std::size_t>(state.range(0));
  MaxTree tree(random_values(leaves, 4));
  // ~2% of leaves clear this threshold, the training regime of interest
  const double tau = 2.05;
  VisitCounter counter;
  for (auto _ : state) {
    auto hits = tree.query_above(tau, true, counter);
    benchmark::DoNotOptimize(hits);
  }
  state.SetComplexityN(state.range(0));
}

void BM_dtree_update(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = 16, d = 8;
  const DataSet ds = random_dataset(n, d, RngSpec{5}, true);
  const WeightBank bank = gaussian_init(m, d, RngSpec{6});
  CorrelationDTree tree(bank, ds);
  Rng rng(RngSpec{7});
  std::vector<double> w(d);
  for (auto _ : state) {
    for (auto& c : w) c = rng.normal();
    tree.update(static_cast<int>(rng.below(static_cast<std::size_t>(m))), w);
  }
  state.SetComplexityN(state.range(0));
}

void BM_wtree_update(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = 16, d = 8;
  const DataSet ds = random_dataset(n, d, RngSpec{8}, true);
  const WeightBank bank = gaussian_init(m, d, RngSpec{9});
  CorrelationWTree tree(bank, ds);
  Rng rng(RngSpec{10});
  std::vector<double> w(d);
  for (auto _ : state) {
    for (auto& c : w) c = rng.normal();
    tree.update(static_cast<int>(rng.below(static_cast<std::size_t>(m))), w);
  }
  state.SetComplexityN(state.range(0));
}

void BM_train_iteration(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const DataSet ds = random_dataset(16, 8, RngSpec{11}, true);
  const TrainAlgo algo = static_cast<TrainAlgo>(state.range(1));
  for (auto _ : state) {
    TrainConfig cfg;
    cfg.eta = 0.1;
    cfg.iters = 1;
    cfg.rng = RngSpec{12};
    cfg.algo = algo;
    TrainResult result = train(ds, m, cfg);
    benchmark::DoNotOptimize(result.metrics.back().loss);
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_maxtree_build)->RangeMultiplier(4)->Range(1 << 8, 1 << 16)->Complexity();
BENCHMARK(BM_maxtree_update)->RangeMultiplier(4)->Range(1 << 8, 1 << 16)->Complexity();
BENCHMARK(BM_maxtree_query)->RangeMultiplier(4)->Range(1 << 8, 1 << 16)->Complexity();
BENCHMARK(BM_dtree_update)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)->Complexity();
BENCHMARK(BM_wtree_update)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)->Complexity();
BENCHMARK(BM_train_iteration)
    ->ArgsProduct({{1 << 10, 1 << 12}, {0, 1, 2}})
    ->Complexity();

BENCHMARK_MAIN();
