// Microbenchmarks for the stationary solvers: expanded-chain power
// iteration, dense direct solve, and the coupled per-side iteration.

#include <benchmark/benchmark.h>

#include "reprank/rankcore.hpp"
#include "reprank/rng.hpp"
#include "reprank/simgraph.hpp"

using namespace reprank;

namespace {

struct Instance {
  StochasticBlocks blocks;
  Eigen::VectorXd Vs, Vw;
  Eigen::MatrixXd expanded;
};

Instance make_instance(int n, int m, uint64_t seed) {
  SplitMix64 rng(seed);
  SimilarityGraph g;
  auto rand_sym = [&](int size) {
    Eigen::MatrixXd M(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j)
        M(i, j) = rng.next_double() < 0.3 ? rng.next_double() : 0.0;
    M = 0.5 * (M + M.transpose());
    M.diagonal().setZero();
    return M;
  };
  g.Ps = rand_sym(n);
  g.Pw = rand_sym(m);
  g.Ms.resize(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      g.Ms(i, j) = rng.next_double() < 0.3 ? rng.next_double() : 0.0;
  g.Mw = g.Ms.transpose();

  Instance inst;
  inst.Vs = Eigen::VectorXd::Constant(n, 1.0 / n);
  inst.Vw = Eigen::VectorXd::Constant(m, 1.0 / m);
  inst.blocks = normalize_graph(g, inst.Vs, inst.Vw);
  inst.expanded =
      build_expanded(inst.blocks, inst.Vs, inst.Vw, RankConfig{}).P;
  return inst;
}

void BM_ExpandedPower(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = make_instance(n, 2 * n, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(stationary_power(inst.expanded));
}

void BM_ExpandedDirect(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = make_instance(n, 2 * n, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(stationary_direct(inst.expanded));
}

void BM_CoupledIterate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = make_instance(n, 2 * n, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        coupled_iterate(inst.blocks, inst.Vs, inst.Vw, RankConfig{}));
}

}  // namespace

BENCHMARK(BM_ExpandedPower)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_ExpandedDirect)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_CoupledIterate)->Arg(32)->Arg(64)->Arg(128);

BENCHMARK_MAIN();
