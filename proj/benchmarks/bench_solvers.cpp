#include <benchmark/benchmark.h>

#include "localpr/appr.hpp"
#include "localpr/l1_solver.hpp"
#include "localpr/random_model.hpp"
#include "localpr/stagewise.hpp"

using namespace localpr;

namespace {

struct Fixture {
  Instance inst;
  NodeId seed;
  double rho;
};

// SBM with blocks of 20, q = 1/n; rho at the recovery threshold.
const Fixture& fixture(std::size_t n) {
  static std::vector<std::pair<std::size_t, Fixture>> cache;
  for (const auto& [size, f] : cache) {
    if (size == n) return f;
  }
  const LocalModelParams params = LocalModelParams::sbm(n / 20, 20, 0.5, 1.0 / static_cast<double>(n));
  Instance inst = generate(params, 42);
  const NodeId seed = find_good_seed(inst.graph, inst.target).value_or(0);
  const double rho = theory(params, 0.5, 0.1).rho_delta;
  cache.emplace_back(n, Fixture{std::move(inst), seed, rho});
  return cache.back().second;
}

void BM_SolveL1(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  const PageRankProblem prob(f.inst.graph, SeedVector::single(f.seed), 0.5, f.rho);
  for (auto _ : state) benchmark::DoNotOptimize(solve_l1(prob));
}
BENCHMARK(BM_SolveL1)->Arg(2000)->Arg(20000)->Arg(100000);

void BM_Appr(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  const PageRankProblem prob(f.inst.graph, SeedVector::single(f.seed), 0.5, f.rho);
  for (auto _ : state) benchmark::DoNotOptimize(appr_solve(prob));
}
BENCHMARK(BM_Appr)->Arg(2000)->Arg(20000)->Arg(100000);

void BM_Stagewise(benchmark::State& state) {
  const Fixture& f = fixture(2000);
  const PageRankProblem prob(f.inst.graph, SeedVector::single(f.seed), 0.5, 0.0);
  StagewiseOptions opt;
  opt.eta = 1e-4;
  opt.stop.min_rho = f.rho;
  opt.stride = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stagewise_path(prob, opt));
}
BENCHMARK(BM_Stagewise)->Arg(10)->Arg(1000);

void BM_Generate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const LocalModelParams params = LocalModelParams::sbm(n / 20, 20, 0.5, 1.0 / static_cast<double>(n));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate(params, ++seed));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_Generate)->Arg(2000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
