// Copyright 2026 The chanred Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "chanred/gadget.hpp"
#include "chanred/matching.hpp"

namespace {

using chanred::BigInt;
using chanred::Exec;

chanred::matching::WeightedBipartiteGraph graph(std::size_t n) {
  std::mt19937_64 rng(n);
  chanred::matching::WeightedBipartiteGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.set_weight(i, j, BigInt(rng() % 1000));
  return g;
}

Exec policy(const benchmark::State& state) {
  return state.range(1) == 0 ? Exec::serial : Exec::parallel;
}

void BM_MatchingWeightSet(benchmark::State& state) {
  const auto g = graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(chanred::matching::matching_weight_set(g, {}, policy(state)));
}
BENCHMARK(BM_MatchingWeightSet)
    ->ArgsProduct({{7, 8, 9}, {0, 1}})
    ->ArgNames({"n", "parallel"})
    ->Unit(benchmark::kMillisecond);

void BM_SolveMergedGadget(benchmark::State& state) {
  const auto w = static_cast<int>(state.range(0));
  const auto mg = chanred::gadget::cmw_to_ca(
      chanred::matching::WeightedBipartiteGraph::from_rows({{BigInt(w)}}),
      chanred::matching::WeightedBipartiteGraph::from_rows({{BigInt(w + 1)}}));
  chanred::channel::SolveOptions o;
  o.cap = mg.s;
  o.exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(chanred::channel::solve_exact(mg.instance, o));
}
BENCHMARK(BM_SolveMergedGadget)
    ->ArgsProduct({{1, 3}, {0, 1}})
    ->ArgNames({"w", "parallel"})
    ->Unit(benchmark::kMillisecond);

void BM_SolveGadget2x2(benchmark::State& state) {
  const auto g = chanred::gadget::matchings_to_ca(graph(2));
  chanred::channel::SolveOptions o;
  o.exec = policy(state);
  for (auto _ : state) benchmark::DoNotOptimize(chanred::channel::solve_exact(g.instance, o));
}
BENCHMARK(BM_SolveGadget2x2)->ArgsProduct({{2}, {0, 1}})->ArgNames({"n", "parallel"});

}  // namespace

BENCHMARK_MAIN();
