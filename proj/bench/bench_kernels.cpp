// Serial reference vs OpenMP variant for each kernel.

#include <vector>

#include <benchmark/benchmark.h>

#include "opdyn/generators.hpp"
#include "opdyn/graph.hpp"
#include "opdyn/kernels.hpp"

using namespace opdyn;

namespace {

struct Fixture {
  Graph g;
  OpinionProfile p;
  Eigen::VectorXd x;
};

const Fixture& fixture(std::size_t n) {
  static std::vector<std::pair<std::size_t, Fixture>> cache;
  for (const auto& [k, f] : cache)
    if (k == n) return f;
  Graph g = random_graph_with_edges(n, 16 * n, 7);
  OpinionProfile p(gen_opinions(n, {}, 1), gen_resistance(n, 2));
  Eigen::VectorXd x = gen_opinions(n, {}, 3);
  cache.emplace_back(n, Fixture{std::move(g), std::move(p), std::move(x)});
  return cache.back().second;
}

template <auto Kernel>
void BM_walk_apply(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  Eigen::VectorXd y(f.x.size());
  for (auto _ : state) {
    Kernel(f.g, f.x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * f.g.edge_count()));
}

template <auto Kernel>
void BM_dynamics_step(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  Eigen::VectorXd y(f.x.size());
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(f.g, f.p, f.x, y));
}

template <auto Kernel>
void BM_mc_walks(benchmark::State& state) {
  const auto& f = fixture(1000);
  std::vector<double> values(static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Kernel(f.g, f.p, 0, seed++, 10'000'000, values);
    benchmark::DoNotOptimize(values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void BM_candidate_objectives(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto& f = fixture(n);
  const ResolventState rs(f.g, f.p);
  std::vector<NodeId> cand(n);
  for (std::size_t i = 0; i < n; ++i) cand[i] = static_cast<NodeId>(i);
  std::vector<double> out(n);
  for (auto _ : state) {
    Kernel(rs, cand, 1.0, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

}  // namespace

BENCHMARK(BM_walk_apply<kernels::walk_apply_serial>)->Name("walk_apply/serial")->Arg(1000)->Arg(100000);
BENCHMARK(BM_walk_apply<kernels::walk_apply_omp>)->Name("walk_apply/omp")->Arg(1000)->Arg(100000);
BENCHMARK(BM_dynamics_step<kernels::dynamics_step_serial>)->Name("dynamics_step/serial")->Arg(1000)->Arg(100000);
BENCHMARK(BM_dynamics_step<kernels::dynamics_step_omp>)->Name("dynamics_step/omp")->Arg(1000)->Arg(100000);
BENCHMARK(BM_mc_walks<kernels::mc_walks_serial>)->Name("mc_walks/serial")->Arg(10000);
BENCHMARK(BM_mc_walks<kernels::mc_walks_omp>)->Name("mc_walks/omp")->Arg(10000);
BENCHMARK(BM_candidate_objectives<kernels::candidate_objectives_serial>)->Name("candidate_objectives/serial")->Arg(1000);
BENCHMARK(BM_candidate_objectives<kernels::candidate_objectives_omp>)->Name("candidate_objectives/omp")->Arg(1000);

BENCHMARK_MAIN();
