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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "fkp/bowen.hpp"
#include "fkp/log_space.hpp"
#include "oracles/generators.hpp"
#include "oracles/oracles.hpp"

namespace fkp {
namespace {

std::vector<State> as_states(const std::vector<Word>& words) {
  return {words.begin(), words.end()};
}

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out(hi - lo + 1);
  std::iota(out.begin(), out.end(), lo);
  return out;
}

TEST(BowenExamples, DoublingDistanceAtHorizonTwo) {
  const SystemSpec sys = SystemSpec::doubling();
  EXPECT_DOUBLE_EQ(bowen_distance(sys, 0.0, 0.5, 2), 0.5);
  EXPECT_DOUBLE_EQ(bowen_distance(sys, 0.3, 0.3, 7), 0.0);
  EXPECT_DOUBLE_EQ(bowen_distance(sys, 0.1, 0.35, 1), distance(sys, 0.1, 0.35));
}

TEST(BowenExamples, FullShiftCylindersAreAllSeparated) {
  const SystemSpec sys = SystemSpec::full_shift(2);
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto pool = as_states(cylinder_words(sys, n));
    const SeparatedSet set = max_separated_set(sys, pool, n, 0.5);
    EXPECT_EQ(set.points.size(), std::size_t{1} << n);
    EXPECT_NEAR(log_sr_sum(sys, Potential::zero(), set), n * std::log(2.0), 1e-9);
    EXPECT_NEAR(log_sr_sum(sys, Potential::symbol_table({0.0, 1.0}), set),
                n * std::log(1.0 + std::exp(1.0)), 1e-9);
  }
}

TEST(BowenExamples, SingletonsAndCoarseScales) {
  const SystemSpec sys = SystemSpec::doubling();
  const std::vector<State> one = {0.25};
  const SeparatedSet s1 = max_separated_set(sys, one, 5, 0.1);
  ASSERT_EQ(s1.points.size(), 1U);
  EXPECT_DOUBLE_EQ(log_sr_sum(sys, Potential::zero(), s1), 0.0);
  const EpsilonNet net = build_net(sys, 0.01);
  EXPECT_EQ(max_separated_set(sys, net.points, 3, sys.diameter() + 0.1).points.size(), 1U);
}

TEST(BowenExamples, FullShiftSeriesIsLogTwo) {
  const SystemSpec sys = SystemSpec::full_shift(2);
  const auto ns = range(4, 12);
  const PressureSeries s = pressure_series(sys, Potential::zero(), ns, 0.5, default_pool());
  ASSERT_EQ(s.samples.size(), ns.size());
  for (const PressureSample& p : s.samples) EXPECT_NEAR(p.per_n, std::log(2.0), 1e-12);
}

TEST(BowenExamples, GoldenMeanCountsFibonacciWords) {
  const SystemSpec sys = SystemSpec::sft({{1, 1}, {1, 0}});
  const auto ns = range(4, 16);
  const PressureSeries s = pressure_series(sys, Potential::zero(), ns, 0.5, default_pool());
  for (const PressureSample& p : s.samples) {
    EXPECT_NEAR(p.log_sum, std::log(static_cast<double>(oracle::fibonacci(p.n + 2))), 1e-9);
  }
  EXPECT_NEAR(s.samples.back().per_n, std::log((1.0 + std::sqrt(5.0)) / 2.0), 0.01);
}

TEST(BowenExamples, RotationStaysBelowNetBound) {
  const SystemSpec sys = SystemSpec::rotation(0.6180339887);
  const double eps = 0.1;
  const std::size_t net_size = build_net(sys, eps / 2).size();
  const auto ns = range(2, 20);
  const PressureSeries s = pressure_series(sys, Potential::zero(), ns, eps, default_pool());
  for (const PressureSample& p : s.samples) {
    EXPECT_LE(p.per_n, std::log(static_cast<double>(net_size)) / p.n + 1e-12);
  }
  EXPECT_LT(s.samples.back().per_n, 0.2);
}

TEST(BowenProperties, BowenMetricIsMonotoneInHorizon) {
  std::mt19937_64 rng(gen::kSeed);
  for (const SystemSpec& sys : gen::builtin_systems()) {
    for (int trial = 0; trial < 1000; ++trial) {
      const State x = gen::random_state(sys, rng);
      const State y = gen::random_state(sys, rng);
      const State z = gen::random_state(sys, rng);
      ASSERT_DOUBLE_EQ(bowen_distance(sys, x, y, 1), distance(sys, x, y));
      double prev = 0.0;
      for (std::size_t n = 1; n <= 8; ++n) {
        const double d = bowen_distance(sys, x, y, n);
        ASSERT_GE(d, prev) << sys.name();
        ASSERT_DOUBLE_EQ(d, bowen_distance(sys, y, x, n));
        ASSERT_LE(bowen_distance(sys, x, z, n),
                  d + bowen_distance(sys, y, z, n) + 1e-12);
        prev = d;
      }
    }
  }
}

TEST(BowenProperties, GreedySetIsSeparatedAndMaximal) {
  std::mt19937_64 rng(gen::kSeed + 1);
  for (const SystemSpec& sys : gen::builtin_systems()) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<State> pool;
      for (int i = 0; i < 60; ++i) pool.push_back(gen::random_state(sys, rng));
      for (double eps : {0.05, 0.2, 0.5}) {
        const SeparatedSet set = max_separated_set(sys, pool, 4, eps);
        ASSERT_TRUE(is_separated(sys, set)) << sys.name();
        ASSERT_TRUE(spans(sys, set, pool)) << sys.name();
        for (std::size_t i = 0; i < set.points.size(); ++i) {
          for (std::size_t j = i + 1; j < set.points.size(); ++j) {
            ASSERT_GT(bowen_distance(sys, set.points[i], set.points[j], 4), eps);
          }
        }
      }
    }
  }
}

TEST(BowenProperties, LogSumIsNonIncreasingInEpsilonOnCylinderPools) {
  std::mt19937_64 rng(gen::kSeed + 2);
  std::normal_distribution<double> g(0.0, 1.0);
  for (const SystemSpec& sys : {SystemSpec::full_shift(2), SystemSpec::full_shift(3),
                                SystemSpec::sft({{1, 1}, {1, 0}})}) {
    std::vector<double> table(static_cast<std::size_t>(sys.symbols()));
    for (double& v : table) v = g(rng);
    const Potential f = Potential::symbol_table(table);
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto pool = as_states(cylinder_words(sys, n + 4));
      double prev = std::numeric_limits<double>::infinity();
      for (double eps : {1.0 / 32, 1.0 / 16, 0.125, 0.25, 0.5, 1.0}) {
        const double v = log_sr_sum(sys, f, max_separated_set(sys, pool, n, eps));
        ASSERT_LE(v, prev + 1e-12) << sys.name() << " n=" << n << " eps=" << eps;
        prev = v;
      }
    }
  }
}

TEST(BowenProperties, LogSumIsNonIncreasingInEpsilonOnIntervalGrid) {
  const SystemSpec sys = SystemSpec::tent(2.0);
  const EpsilonNet net = build_net(sys, 1.0 / 512);
  double prev = std::numeric_limits<double>::infinity();
  for (double eps = 0.01; eps < 1.0; eps += 0.01) {
    const double v = log_sr_sum(sys, Potential::zero(), max_separated_set(sys, net.points, 1, eps));
    ASSERT_LE(v, prev + 1e-12);
    prev = v;
  }
}

TEST(BowenProperties, FullShiftPerNIsExactForFirstSymbolPotentials) {
  std::mt19937_64 rng(gen::kSeed + 3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 2; k <= 4; ++k) {
    const SystemSpec sys = SystemSpec::full_shift(k);
    std::vector<double> table(static_cast<std::size_t>(k));
    for (double& v : table) v = u(rng);
    const double exact = log_sum_exp(table);
    for (double eps : {0.5, 0.25, 0.125}) {
      const PressureSeries s = pressure_series(sys, Potential::symbol_table(table),
                                               range(1, 7), eps, default_pool());
      for (const PressureSample& p : s.samples) {
        ASSERT_NEAR(p.per_n, exact, 1e-12) << "k=" << k << " eps=" << eps << " n=" << p.n;
      }
    }
  }
}

TEST(BowenProperties, ExactSearchDominatesGreedyAndMatchesBruteForce) {
  std::mt19937_64 rng(gen::kSeed + 4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const SystemSpec sys = SystemSpec::doubling();
  const Potential f = Potential::polynomial({0.0, 2.0, -1.5});
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<State> pool;
    for (int i = 0; i < 14; ++i) pool.push_back(gen::random_state(sys, rng));
    const std::size_t n = 3;
    const double eps = 0.15;
    std::vector<double> w;
    std::vector<std::vector<int>> adj(pool.size(), std::vector<int>(pool.size(), 0));
    for (std::size_t i = 0; i < pool.size(); ++i) {
      w.push_back(std::exp(birkhoff_sum(sys, f, pool[i], n)));
      for (std::size_t j = 0; j < pool.size(); ++j) {
        if (i != j && bowen_distance(sys, pool[i], pool[j], n) <= eps) adj[i][j] = 1;
      }
    }
    const double best = std::log(oracle::max_weight_independent_bruteforce(w, adj));
    const SeparatedSet exact = max_separated_set(sys, pool, n, eps, SetSearch::exact, f);
    const SeparatedSet greedy = max_separated_set(sys, pool, n, eps);
    ASSERT_TRUE(is_separated(sys, exact));
    ASSERT_NEAR(log_sr_sum(sys, f, exact), best, 1e-9);
    ASSERT_LE(log_sr_sum(sys, f, greedy), best + 1e-9);
  }
}

TEST(BowenProperties, PoolsAreDeterministic) {
  const SystemSpec sys = SystemSpec::logistic(3.9);
  const auto a = pressure_series(sys, Potential::zero(), range(2, 6), 0.1, default_pool());
  const auto b = pressure_series(sys, Potential::zero(), range(2, 6), 0.1, default_pool());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].log_sum, b.samples[i].log_sum);
  }
}

}  // namespace
}  // namespace fkp
