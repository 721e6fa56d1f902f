#include <benchmark/benchmark.h>

#include "rbw/arrow.hpp"
#include "rbw/coloring.hpp"
#include "rbw/constructions.hpp"
#include "rbw/gadgets.hpp"
#include "rbw/graph.hpp"
#include "rbw/janson.hpp"
#include "rbw/perturbation.hpp"

using namespace rbw;

namespace {

const Graph& k3() {
  static const Graph g = build(GadgetSpec::complete(3));
  return g;
}

void BM_CopiesSerial(benchmark::State& state) {
  const Graph host = build(GadgetSpec::triangle_star(25, 49));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_copies(host, k3()));
}

void BM_CopiesParallel(benchmark::State& state) {
  const Graph host = build(GadgetSpec::triangle_star(25, 49));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_copies_parallel(host, k3()));
}

ProperColoring zero_coloring() {
  const int n = 40;
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n / 2; ++u) {
    for (Vertex v = n / 2; v < n; ++v) edges.push_back({u, v});
  }
  std::vector<Side> sides(n / 2, Side::Left);
  sides.resize(n, Side::Right);
  ComponentStructure parts;
  for (int i = 0; i + 4 <= n / 2; i += 4) {
    parts.left.push_back({Shape::K13, {i, i + 1, i + 2, i + 3}});
    parts.right.push_back({Shape::P4, {n / 2 + i, n / 2 + i + 1, n / 2 + i + 2, n / 2 + i + 3}});
  }
  return zero_statement_coloring(Graph(n, edges, sides), parts).coloring.coloring;
}

void BM_CensusSerial(benchmark::State& state) {
  const ProperColoring c = zero_coloring();
  const Graph k4 = build(GadgetSpec::complete(4));
  for (auto _ : state) benchmark::DoNotOptimize(rainbow_census(c, k4));
}

void BM_CensusParallel(benchmark::State& state) {
  const ProperColoring c = zero_coloring();
  const Graph k4 = build(GadgetSpec::complete(4));
  for (auto _ : state) benchmark::DoNotOptimize(rainbow_census_parallel(c, k4));
}

void BM_JansonSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(janson_quantities_serial(build(GadgetSpec::cycle(4)), 8));
}

void BM_JansonParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(janson_quantities(build(GadgetSpec::cycle(4)), 8));
}

void BM_ArrowSerial(benchmark::State& state) {
  const Graph g = build(parse_spec("Kjoin(P4,P4)"));
  const Graph k4 = build(GadgetSpec::complete(4));
  for (auto _ : state) benchmark::DoNotOptimize(decide_arrow_serial(g, k4));
}

void BM_ArrowParallel(benchmark::State& state) {
  const Graph g = build(parse_spec("Kjoin(P4,P4)"));
  const Graph k4 = build(GadgetSpec::complete(4));
  for (auto _ : state) benchmark::DoNotOptimize(decide_arrow(g, k4));
}

void BM_SweepSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep_matching_removal_serial(1));
}

void BM_SweepParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sweep_matching_removal(1));
}

ExperimentConfig trials_config() {
  ExperimentConfig c;
  c.seed = SeedSpec::half(6);
  c.pattern = "C4";
  c.trials = 200;
  return c;
}

void BM_TrialsSerial(benchmark::State& state) {
  const auto c = trials_config();
  for (auto _ : state) benchmark::DoNotOptimize(estimate_arrow_probability_serial(c, 0.2));
}

void BM_TrialsParallel(benchmark::State& state) {
  const auto c = trials_config();
  for (auto _ : state) benchmark::DoNotOptimize(estimate_arrow_probability(c, 0.2));
}

}  // namespace

BENCHMARK(BM_CopiesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CopiesParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CensusSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CensusParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JansonSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JansonParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ArrowSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ArrowParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
