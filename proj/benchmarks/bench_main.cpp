#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "lcameta/lca_engine.hpp"
#include "lcameta/metastats.hpp"
#include "lcameta/regress.hpp"
#include "lcameta/special_functions.hpp"
#include "support/random_dag.hpp"

namespace {

// Process i feeds on i+1 and i+2 plus a few leaves, so every process is
// reachable from p0 and unmemoized scoring grows like Fibonacci.
struct Ladder {
  lcameta::InventoryGraph graph;
  lcameta::EmissionFactorTable factors;
};

Ladder ladder(std::size_t n) {
  Ladder out;
  for (int k = 0; k < 4; ++k) out.factors.insert({"leaf" + std::to_string(k), "GLO", "kg"}, 1.0 + k);
  std::vector<lcameta::ProcessInventory> ps(n);
  for (std::size_t i = 0; i < n; ++i) {
    ps[i].id = "p" + std::to_string(i);
    for (std::size_t j = i + 1; j < std::min(n, i + 3); ++j)
      ps[i].exchanges.push_back({"p" + std::to_string(j), "GLO", 0.5, "kg", lcameta::ExchangeKind::process});
    for (int k = 0; k < 4; ++k)
      ps[i].exchanges.push_back({"leaf" + std::to_string(k), "GLO", 0.25, "kg", lcameta::ExchangeKind::leaf});
  }
  out.graph = lcameta::InventoryGraph(std::move(ps));
  return out;
}

}  // namespace

static void BM_UnitScore(benchmark::State& state) {
  const auto inv = ladder(static_cast<std::size_t>(state.range(0)));
  const bool memoize = state.range(1) != 0;
  for (auto _ : state) {
    auto b = lcameta::unit_score(inv.graph, inv.factors, "p0", {"bench", memoize});
    benchmark::DoNotOptimize(b.total);
  }
  state.counters["processes"] = static_cast<double>(inv.graph.size());
}
BENCHMARK(BM_UnitScore)->Args({16, 0})->Args({16, 1})->Args({400, 1});

static void BM_RandomDag(benchmark::State& state) {
  std::mt19937_64 rng(42);
  std::vector<testing_support::RandomInventory> pool;
  for (int i = 0; i < 64; ++i) pool.push_back(testing_support::random_inventory(rng));
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& inv = pool[k++ % pool.size()];
    auto b = lcameta::unit_score(inv.graph, inv.factors, inv.root);
    benchmark::DoNotOptimize(b.total);
  }
}
BENCHMARK(BM_RandomDag);

static void BM_Fit(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> qa(5.0, 150.0), ech(500.0, 900.0);
  std::normal_distribution<double> noise(0.0, 2.0);
  lcameta::RegressionInput in;
  for (int i = 0; i < state.range(0); ++i) {
    const double a = qa(rng), e = ech(rng);
    in.rows.push_back({2000 + i, a, e, 30.0 - 0.05 * a + 0.01 * e + noise(rng)});
  }
  const auto spec = lcameta::ModelSpec::from_name("l_both");
  for (auto _ : state) {
    auto f = lcameta::fit(spec, in);
    benchmark::DoNotOptimize(f.r_squared);
  }
}
BENCHMARK(BM_Fit)->Arg(7)->Arg(50)->Arg(1000);

static void BM_StudentT(benchmark::State& state) {
  double t = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lcameta::special::student_t_two_sided(t, 4));
    t = t < 50 ? t * 1.1 : 0.01;
  }
}
BENCHMARK(BM_StudentT);

static void BM_FTail(benchmark::State& state) {
  double f = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lcameta::special::f_upper_tail(f, 2, 4));
    f = f < 50 ? f * 1.1 : 0.01;
  }
}
BENCHMARK(BM_FTail);

static void BM_Describe(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::lognormal_distribution<double> v(3.0, 0.6);
  std::vector<double> values(static_cast<std::size_t>(state.range(0)));
  for (auto& x : values) x = v(rng);
  for (auto _ : state) {
    auto s = lcameta::describe_values(values);
    benchmark::DoNotOptimize(s.variance);
  }
}
BENCHMARK(BM_Describe)->Arg(40)->Arg(10000);

BENCHMARK_MAIN();
