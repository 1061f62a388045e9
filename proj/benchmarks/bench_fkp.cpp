// Copyright 2026 The fkpressure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fkp/fkp.hpp"

namespace {

using namespace fkp;

void BM_BowenDistance(benchmark::State& state) {
  const SystemSpec sys = SystemSpec::doubling();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bowen_distance(sys, 0.1234, 0.5678, n));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BowenDistance)->RangeMultiplier(4)->Range(4, 1024)->Complexity();

void BM_FkDistance(benchmark::State& state) {
  const SystemSpec sys = SystemSpec::rotation(0.6180339887);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fk_distance(sys, 0.1, 0.35, n).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FkDistance)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_LcsLength(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::bernoulli_distribution bit(0.2);
  MatchMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (bit(rng)) m.set(i, j);
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(lcs_length(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LcsLength)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_BowenSeriesFullShift(benchmark::State& state) {
  const SystemSpec sys = SystemSpec::full_shift(2);
  const std::vector<std::size_t> ns = {static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(pressure_series(sys, Potential::zero(), ns, 0.5, default_pool()));
  }
}
BENCHMARK(BM_BowenSeriesFullShift)->DenseRange(8, 14, 2)->Unit(benchmark::kMillisecond);

void BM_FkSeriesFullShift(benchmark::State& state) {
  const SystemSpec sys = SystemSpec::full_shift(2);
  const std::vector<std::size_t> ns = {static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfk_series(sys, Potential::zero(), ns, 0.125, default_pool()));
  }
}
BENCHMARK(BM_FkSeriesFullShift)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

void BM_CoarseWordsDoubling(benchmark::State& state) {
  const SystemSpec sys = SystemSpec::doubling();
  const EpsilonNet net = build_net(sys, 1.0 / 256);
  const EpsilonNet cells = partition_net(sys, 0.5);
  const TransitionGraph g = build_po_graph(sys, net, 1.0 / 64, Potential::zero());
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_coarse_words(sys, g, cells, n, Potential::zero()).log_count);
  }
}
BENCHMARK(BM_CoarseWordsDoubling)->DenseRange(4, 16, 4);

void BM_BuildPoGraph(benchmark::State& state) {
  const SystemSpec sys = SystemSpec::doubling();
  const EpsilonNet net = build_net(sys, 1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_po_graph(sys, net, 1.0 / 64, Potential::zero()));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildPoGraph)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_SpectralLogGrowth(benchmark::State& state) {
  const SystemSpec sys = SystemSpec::doubling();
  const EpsilonNet net = build_net(sys, 1.0 / static_cast<double>(state.range(0)));
  const TransitionGraph g = build_po_graph(sys, net, 1.0 / 64, Potential::zero());
  for (auto _ : state) benchmark::DoNotOptimize(spectral_log_growth(g));
}
BENCHMARK(BM_SpectralLogGrowth)->RangeMultiplier(4)->Range(64, 1024);

void BM_ClosedPathCount(benchmark::State& state) {
  const auto v = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::bernoulli_distribution edge(0.2);
  Matrix01 a(v, std::vector<int>(v, 0));
  for (auto& row : a) {
    for (int& e : row) e = edge(rng) ? 1 : 0;
  }
  const TransitionGraph g = TransitionGraph::from_adjacency(a);
  for (auto _ : state) benchmark::DoNotOptimize(count_periodic_po(g, 16));
}
BENCHMARK(BM_ClosedPathCount)->RangeMultiplier(2)->Range(8, 128);

void BM_LongestChain(benchmark::State& state) {
  const SystemSpec sys = SystemSpec::doubling();
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<State> seq;
  for (std::size_t i = 0; i < n; ++i) seq.push_back(u(rng));
  for (auto _ : state) benchmark::DoNotOptimize(longest_chain(sys, seq, 0.1).k);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LongestChain)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_FkpoBruteForce(benchmark::State& state) {
  const SystemSpec sys =
      SystemSpec::finite({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {1, 2, 0});
  const FkpoParams params{0.5, 0.4, 5};
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fkpo_sr_bruteforce(sys, Potential::zero(), n, 0.5, params, 6).log_sum);
  }
}
BENCHMARK(BM_FkpoBruteForce)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

void BM_ExactIndependentSet(benchmark::State& state) {
  const auto v = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(4);
  std::bernoulli_distribution edge(0.3);
  std::uniform_real_distribution<double> w(-1.0, 1.0);
  std::vector<std::vector<std::size_t>> adj(v);
  std::vector<double> weights(v);
  for (std::size_t i = 0; i < v; ++i) {
    weights[i] = w(rng);
    for (std::size_t j = i + 1; j < v; ++j) {
      if (edge(rng)) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(exact_max_weight_independent_set(weights, adj));
}
BENCHMARK(BM_ExactIndependentSet)->DenseRange(16, 48, 16);

}  // namespace

BENCHMARK_MAIN();
