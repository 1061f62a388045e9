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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fkp/errors.hpp"
#include "fkp/independent_set.hpp"
#include "fkp/log_space.hpp"
#include "oracles/generators.hpp"
#include "oracles/oracles.hpp"

namespace fkp {
namespace {

std::vector<std::vector<std::size_t>> to_lists(const std::vector<std::vector<int>>& a) {
  std::vector<std::vector<std::size_t>> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[i][j] != 0) out[i].push_back(j);
    }
  }
  return out;
}

std::vector<std::vector<int>> random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution edge(p);
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) a[i][j] = a[j][i] = edge(rng) ? 1 : 0;
  }
  return a;
}

TEST(IndependentSet, EmptyAndEdgeless) {
  EXPECT_TRUE(exact_max_weight_independent_set({}, {}).empty());
  const std::vector<double> w = {0.0, 1.0, -1.0};
  EXPECT_EQ(exact_max_weight_independent_set(w, {{}, {}, {}}),
            (std::vector<std::size_t>{0, 1, 2}));
}

TEST(IndependentSet, GreedyIsMaximal) {
  std::mt19937_64 rng(gen::kSeed);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_graph(20, 0.2, rng);
    const auto kept = greedy_separated(20, [&](std::size_t i, std::size_t k) { return a[i][k] != 0; });
    std::vector<int> in(20, 0);
    for (std::size_t k : kept) in[k] = 1;
    for (std::size_t i = 0; i < 20; ++i) {
      bool blocked = false;
      for (std::size_t k : kept) {
        ASSERT_TRUE(i == k || !(in[i] && a[i][k]));
        blocked = blocked || a[i][k] != 0;
      }
      ASSERT_TRUE(in[i] || blocked);
    }
  }
}

TEST(IndependentSet, ExactMatchesBruteForce) {
  std::mt19937_64 rng(gen::kSeed + 1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<std::size_t> size(1, 16);
  std::uniform_real_distribution<double> density(0.05, 0.7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = size(rng);
    const auto a = random_graph(n, density(rng), rng);
    std::vector<double> log_w(n);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
      log_w[i] = u(rng);
      w[i] = std::exp(log_w[i]);
    }
    const auto chosen = exact_max_weight_independent_set(log_w, to_lists(a));
    ASSERT_TRUE(std::is_sorted(chosen.begin(), chosen.end()));
    double total = 0.0;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      total += w[chosen[i]];
      for (std::size_t j = i + 1; j < chosen.size(); ++j) ASSERT_EQ(a[chosen[i]][chosen[j]], 0);
    }
    ASSERT_NEAR(total, oracle::max_weight_independent_bruteforce(w, a), 1e-9 * total);
  }
}

TEST(IndependentSet, HandlesTinyLogWeights) {
  // exp underflows for every weight; the choice must still be optimal.
  const std::vector<double> log_w = {-1000.0, -999.5, -1000.0};
  const std::vector<std::vector<std::size_t>> adj = {{1}, {0, 2}, {1}};
  const auto chosen = exact_max_weight_independent_set(log_w, adj);
  EXPECT_EQ(chosen, (std::vector<std::size_t>{0, 2}));
}

TEST(IndependentSet, ComponentCap) {
  std::vector<std::vector<std::size_t>> path(70);
  for (std::size_t i = 0; i + 1 < 70; ++i) {
    path[i].push_back(i + 1);
    path[i + 1].push_back(i);
  }
  EXPECT_THROW(exact_max_weight_independent_set(std::vector<double>(70, 0.0), path),
               ResourceError);
  path.resize(64);
  path[63].pop_back();
  EXPECT_EQ(exact_max_weight_independent_set(std::vector<double>(64, 0.0), path, 64).size(),
            32U);
  path.resize(70);
  for (std::size_t i = 64; i < 70; ++i) path[i].clear();
  path[63].push_back(64);
  path[64].push_back(63);
  EXPECT_THROW(exact_max_weight_independent_set(std::vector<double>(70, 0.0), path, 100),
               ResourceError);
}

}  // namespace
}  // namespace fkp
