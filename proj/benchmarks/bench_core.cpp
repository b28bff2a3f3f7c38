#include <benchmark/benchmark.h>

#include "cubedim/analysis.hpp"

using namespace cubedim;

namespace {

void BM_GreedyNet(benchmark::State& state) {
  const auto space = random_points(2, static_cast<int>(state.range(0)), 1);
  std::vector<int> all(space.size());
  for (int i = 0; i < space.size(); ++i) all[i] = i;
  for (auto _ : state) {
    auto net = greedy_net(space, all, 0.1, {});
    benchmark::DoNotOptimize(net);
  }
}
BENCHMARK(BM_GreedyNet)->Arg(100)->Arg(1000);

void BM_BuildCubeTree(benchmark::State& state) {
  const auto space = random_points(2, static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    auto tree = build_cube_tree(space, Rational(1, 8), 3, 0);
    benchmark::DoNotOptimize(tree);
  }
}
BENCHMARK(BM_BuildCubeTree)->Arg(100)->Arg(300);

void BM_CoveringExact(benchmark::State& state) {
  const auto space = grid_points(1, 100);
  for (auto _ : state) {
    const long n = covering_number(space, 50, 0.08, 0.02, CoverMode::exact);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_CoveringExact);

void BM_BuildMuP(benchmark::State& state) {
  const CubeTree tree = unfold_spec(triadic_spec(), static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto mu = build_mu_p(tree, Rational(2, 7));
    benchmark::DoNotOptimize(mu);
  }
}
BENCHMARK(BM_BuildMuP)->Arg(6)->Arg(8);

void BM_ExactDimension(benchmark::State& state) {
  const TreeSpec spec = boundary_rich_spec(1, 3, 3, Rational(1, 9));
  for (auto _ : state) {
    auto dim = exact_dimension_spec(spec, Rational(1, 7), {Rational(1)}, DimKind::measure_assouad);
    benchmark::DoNotOptimize(dim);
  }
}
BENCHMARK(BM_ExactDimension);

void BM_ChainEstimate(benchmark::State& state) {
  const CubeTree tree = unfold_spec(triadic_spec(), static_cast<int>(state.range(0)));
  const MassAssignment mu = build_mu_p(tree, Rational(1, 9));
  for (auto _ : state) {
    auto report = measure_chain_estimate(tree, mu, 1, DimKind::measure_assouad);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_ChainEstimate)->Arg(6)->Arg(8);

void BM_KeyEstimate(benchmark::State& state) {
  const CubeTree tree = unfold_spec(triadic_spec(), 6);
  for (auto _ : state) {
    auto result = check_key_estimate(tree, Rational(1, 4), Rational(1, 3));
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_KeyEstimate);

void BM_Solve(benchmark::State& state) {
  const TreeSpec spec = triadic_spec();
  for (auto _ : state) {
    auto result = ivp_solve(spec, 1.5, DimKind::measure_assouad, 1e-6);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_Solve);

}  // namespace

BENCHMARK_MAIN();
