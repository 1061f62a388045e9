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
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "fkp/errors.hpp"
#include "fkp/log_space.hpp"
#include "fkp/pseudo_orbit.hpp"
#include "oracles/generators.hpp"
#include "oracles/oracles.hpp"

namespace fkp {
namespace {

const double kGolden = std::log((1.0 + std::sqrt(5.0)) / 2.0);

Matrix01 complete(std::size_t m) { return Matrix01(m, std::vector<int>(m, 1)); }

Matrix01 to_matrix(const TransitionGraph& g) {
  Matrix01 a(g.vertex_count(), std::vector<int>(g.vertex_count(), 0));
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    for (std::size_t v : g.successors[u]) a[u][v] = 1;
  }
  return a;
}

// Distinct cell words of every path of length n, with their center weights.
std::map<std::vector<std::size_t>, double> coarse_words_bruteforce(
    const SystemSpec& sys, const TransitionGraph& g, const EpsilonNet& partition,
    std::size_t n, const Potential& f) {
  std::vector<std::size_t> cell(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    cell[v] = nearest_point(sys, partition, g.vertices[v]);
  }
  std::map<std::vector<std::size_t>, double> words;
  std::vector<std::size_t> word;
  std::function<void(std::size_t)> walk = [&](std::size_t at) {
    word.push_back(cell[at]);
    if (word.size() == n) {
      double log_w = 0.0;
      for (std::size_t c : word) log_w += f(sys, partition.points[c]);
      words[word] = log_w;
    } else {
      for (std::size_t v : g.successors[at]) walk(v);
    }
    word.pop_back();
  };
  for (std::size_t v = 0; v < g.vertex_count(); ++v) walk(v);
  return words;
}

TEST(PseudoOrbitExamples, IdentityMapHasOnlySelfLoops) {
  const SystemSpec sys = SystemSpec::finite({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, {0, 1, 2});
  const EpsilonNet net = build_net(sys, 0.5);
  const TransitionGraph g = build_po_graph(sys, net, 0.5, Potential::zero());
  ASSERT_EQ(g.vertex_count(), 3U);
  EXPECT_EQ(g.edge_count(), 3U);
  for (std::size_t u = 0; u < 3; ++u) EXPECT_TRUE(g.has_edge(u, u));
  const EpsilonNet cells = partition_net(sys, 0.5);
  for (std::size_t n : {1U, 4U, 9U}) {
    const CoarseWordCount c = count_coarse_words(sys, g, cells, n, Potential::zero());
    EXPECT_NEAR(c.log_count, std::log(3.0), 1e-12);
  }
}

TEST(PseudoOrbitExamples, DoublingEighthsHaveThreeEdges) {
  const SystemSpec sys = SystemSpec::doubling();
  const EpsilonNet net = build_net(sys, 1.0 / 8);
  ASSERT_EQ(net.size(), 8U);
  const TransitionGraph g = build_po_graph(sys, net, 1.0 / 8, Potential::zero());
  for (std::size_t u = 0; u < 8; ++u) {
    EXPECT_EQ(g.successors[u].size(), 3U);
    const double image = std::get<double>(evaluate_map(sys, net.points[u]));
    for (std::size_t v = 0; v < 8; ++v) {
      EXPECT_EQ(g.has_edge(u, v), distance(sys, image, net.points[v]) <= 1.0 / 8);
    }
  }
}

TEST(PseudoOrbitExamples, LargeAlphaGivesCompleteGraph) {
  const SystemSpec sys = SystemSpec::tent(2.0);
  const EpsilonNet net = build_net(sys, 0.1);
  const TransitionGraph g = build_po_graph(sys, net, sys.diameter(), Potential::zero());
  EXPECT_EQ(g.edge_count(), net.size() * net.size());
  EXPECT_NEAR(spectral_log_growth(g), std::log(static_cast<double>(net.size())), 1e-9);
}

TEST(PseudoOrbitExamples, SpectralGrowth) {
  EXPECT_NEAR(spectral_log_growth(TransitionGraph::from_adjacency({{1}})), 0.0, 1e-12);
  EXPECT_NEAR(spectral_log_growth(TransitionGraph::from_adjacency(complete(5))),
              std::log(5.0), 1e-9);
  EXPECT_NEAR(spectral_log_growth(TransitionGraph::from_adjacency({{1, 1}, {1, 0}})),
              kGolden, 1e-9);
  EXPECT_NEAR(spectral_log_growth(TransitionGraph::from_adjacency({{0, 1}, {1, 0}})), 0.0,
              1e-9);
  EXPECT_EQ(spectral_log_growth(TransitionGraph::from_adjacency({{0, 1}, {0, 0}})), kNegInf);
  EXPECT_NEAR(spectral_log_growth(TransitionGraph::from_adjacency({{1}}, {0.7})), 0.7, 1e-12);
}

TEST(PseudoOrbitExamples, PeriodicCounts) {
  const TransitionGraph loop = TransitionGraph::from_adjacency({{1}});
  const TransitionGraph cycle = TransitionGraph::from_adjacency({{0, 1}, {1, 0}});
  const TransitionGraph golden = TransitionGraph::from_adjacency({{1, 1}, {1, 0}});
  for (std::size_t n = 1; n <= 9; ++n) {
    EXPECT_NEAR(count_periodic_po(loop, n), 0.0, 1e-12);
    if (n % 2 == 0) {
      EXPECT_NEAR(count_periodic_po(cycle, n), std::log(2.0), 1e-12);
    } else {
      EXPECT_EQ(count_periodic_po(cycle, n), kNegInf);
    }
    EXPECT_EQ(closed_path_count(golden, n), oracle::lucas(n));
  }
  EXPECT_NEAR(count_periodic_po(golden, 5), std::log(11.0), 1e-12);
}

TEST(PseudoOrbitExamples, DoublingCoarseWordsGrowLikeLogTwo) {
  const SystemSpec sys = SystemSpec::doubling();
  const EpsilonNet net = build_net(sys, 1.0 / 256);
  const TransitionGraph g = build_po_graph(sys, net, 1.0 / 128, Potential::zero());
  const CoarseWordCount c =
      count_coarse_words(sys, g, partition_net(sys, 0.5), 10, Potential::zero());
  const double oracle_rate = std::log(static_cast<double>(oracle::doubling_itineraries(10))) / 10;
  EXPECT_NEAR(oracle_rate, std::log(2.0), 1e-12);
  EXPECT_NEAR(c.log_count / 10, oracle_rate, 0.15);
  EXPECT_DOUBLE_EQ(c.log_weighted, c.log_count);
}

TEST(PseudoOrbitExamples, ScaledDirectWithConstantOneIsBowen) {
  const SystemSpec sys = SystemSpec::sft({{1, 1}, {1, 0}});
  const Potential f = Potential::symbol_table({0.3, -0.2});
  ScaledGrid grid;
  grid.n_values = {2, 4, 6, 8};
  grid.epsilon = 0.25;
  const PressureSeries scaled =
      scaled_pressure_series(sys, f, ScaleFunction::constant_one(), ScaledMode::direct, grid);
  const PressureSeries plain = pressure_series(sys, f, grid.n_values, 0.25, default_pool());
  ASSERT_EQ(scaled.samples.size(), plain.samples.size());
  for (std::size_t i = 0; i < plain.samples.size(); ++i) {
    EXPECT_EQ(scaled.samples[i].per_n, plain.samples[i].per_n);
  }
}

TEST(PseudoOrbitExamples, ScaledDirectWithZeroPotentialDividesEntropy) {
  const SystemSpec sys = SystemSpec::full_shift(2);
  ScaledGrid grid;
  grid.n_values = {3, 5, 7};
  grid.epsilon = 1.0 / 16;
  for (const char* name : {"log", "powlog:2", "powlog:0.5"}) {
    const ScaleFunction s = ScaleFunction::parse(name);
    const PressureSeries scaled =
        scaled_pressure_series(sys, Potential::zero(), s, ScaledMode::direct, grid);
    const PressureSeries plain =
        pressure_series(sys, Potential::zero(), grid.n_values, grid.epsilon, default_pool());
    for (std::size_t i = 0; i < plain.samples.size(); ++i) {
      EXPECT_NEAR(scaled.samples[i].per_n, plain.samples[i].per_n / s(grid.epsilon), 1e-12)
          << name;
    }
  }
}

TEST(PseudoOrbitErrors, RejectsEmptyNetAndCapsStates) {
  const SystemSpec sys = SystemSpec::doubling();
  EXPECT_THROW(build_po_graph(sys, EpsilonNet{}, 0.1, Potential::zero()), UsageError);
  const EpsilonNet net = build_net(sys, 1.0 / 256);
  const TransitionGraph g = build_po_graph(sys, net, 1.0 / 64, Potential::zero());
  try {
    count_coarse_words(sys, g, partition_net(sys, 1.0 / 64), 30, Potential::zero(), 1.0, 50);
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    EXPECT_LT(e.reached(), 30U);
  }
  EXPECT_THROW(closed_path_count(TransitionGraph::from_adjacency(complete(16)), 20),
               ResourceError);
}

TEST(PseudoOrbitProperties, EdgesAndCountsAreMonotoneInAlpha) {
  for (const SystemSpec& sys : {SystemSpec::doubling(), SystemSpec::tent(1.5),
                                SystemSpec::logistic(3.9)}) {
    const EpsilonNet net = build_net(sys, 1.0 / 64);
    const EpsilonNet cells = partition_net(sys, 0.25);
    double prev_spec = kNegInf;
    double prev_count = kNegInf;
    TransitionGraph prev = build_po_graph(sys, net, 1.0 / 256, Potential::zero());
    for (double alpha : {1.0 / 128, 1.0 / 64, 1.0 / 32, 1.0 / 16, 0.125}) {
      const TransitionGraph g = build_po_graph(sys, net, alpha, Potential::zero());
      for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        for (std::size_t v : prev.successors[u]) ASSERT_TRUE(g.has_edge(u, v));
      }
      const double spec = spectral_log_growth(g);
      const double count =
          count_coarse_words(sys, g, cells, 6, Potential::zero()).log_count;
      ASSERT_GE(spec, prev_spec - 1e-9) << sys.name();
      ASSERT_GE(count, prev_count - 1e-12) << sys.name();
      prev_spec = spec;
      prev_count = count;
      prev = g;
    }
  }
}

TEST(PseudoOrbitProperties, GenuineOrbitsShadowIntoPaths) {
  for (const SystemSpec& sys : {SystemSpec::doubling(), SystemSpec::tent(2.0)}) {
    const double res = 1.0 / 128;
    const EpsilonNet net = build_net(sys, res);
    const double alpha = 2 * res * (1 + sys.expansion_bound());
    const TransitionGraph g = build_po_graph(sys, net, alpha, Potential::zero());
    for (const State& u : net.points) {
      const OrbitSegment o = orbit_segment(sys, u, 12);
      for (std::size_t k = 0; k + 1 < o.size(); ++k) {
        const std::size_t a = nearest_point(sys, net, o[k]);
        const std::size_t b = nearest_point(sys, net, o[k + 1]);
        ASSERT_TRUE(g.has_edge(a, b)) << sys.name();
      }
    }
  }
}

TEST(PseudoOrbitProperties, SingleStepCountsOccupiedCells) {
  std::mt19937_64 rng(gen::kSeed);
  for (const SystemSpec& sys : {SystemSpec::doubling(), SystemSpec::tent(2.0),
                                SystemSpec::full_shift(3)}) {
    for (double res : {0.5, 0.2, 0.07}) {
      const EpsilonNet net = build_net(sys, res / 2);
      const EpsilonNet cells = partition_net(sys, res);
      const TransitionGraph g = build_po_graph(sys, net, res, Potential::zero());
      std::set<std::size_t> occupied;
      for (const State& v : net.points) occupied.insert(nearest_point(sys, cells, v));
      const CoarseWordCount c = count_coarse_words(sys, g, cells, 1, Potential::zero());
      ASSERT_NEAR(c.log_count, std::log(static_cast<double>(occupied.size())), 1e-12);
    }
  }
}

TEST(PseudoOrbitProperties, CoarseWordsMatchPathEnumeration) {
  const Potential f = Potential::polynomial({0.1, 1.0, -0.5});
  for (const SystemSpec& sys : {SystemSpec::doubling(), SystemSpec::logistic(3.9)}) {
    const EpsilonNet net = build_net(sys, 1.0 / 16);
    const EpsilonNet cells = partition_net(sys, 0.25);
    for (double alpha : {1.0 / 32, 1.0 / 16, 0.2}) {
      const TransitionGraph g = build_po_graph(sys, net, alpha, f);
      for (std::size_t n = 1; n <= 6; ++n) {
        const auto words = coarse_words_bruteforce(sys, g, cells, n, f);
        LogAccumulator weighted;
        for (const auto& [w, lw] : words) weighted.add(lw);
        const CoarseWordCount c = count_coarse_words(sys, g, cells, n, f);
        ASSERT_NEAR(c.log_count, std::log(static_cast<double>(words.size())), 1e-12)
            << sys.name() << " alpha=" << alpha << " n=" << n;
        ASSERT_NEAR(c.log_weighted, weighted.value(), 1e-9);
      }
    }
  }
}

TEST(PseudoOrbitProperties, TraceMatchesClosedWalkEnumeration) {
  std::mt19937_64 rng(gen::kSeed + 1);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  std::uniform_real_distribution<double> u(0.05, 0.6);
  for (int trial = 0; trial < 60; ++trial) {
    const Matrix01 a = gen::random_adjacency(size(rng), u(rng), rng);
    const TransitionGraph g = TransitionGraph::from_adjacency(a);
    ASSERT_EQ(to_matrix(g), a);
    for (std::size_t n = 1; n <= 8; ++n) {
      const std::uint64_t walks = oracle::closed_walks_bruteforce(a, n);
      ASSERT_EQ(closed_path_count(g, n), walks);
      if (walks == 0) {
        ASSERT_EQ(count_periodic_po(g, n), kNegInf);
      } else {
        ASSERT_NEAR(count_periodic_po(g, n), std::log(static_cast<double>(walks)), 1e-9);
      }
    }
  }
}

TEST(PseudoOrbitProperties, SpectralGrowthBoundsWalkGrowth) {
  std::mt19937_64 rng(gen::kSeed + 2);
  for (int trial = 0; trial < 60; ++trial) {
    const Matrix01 a = gen::random_adjacency(8, 0.3, rng);
    const TransitionGraph g = TransitionGraph::from_adjacency(a);
    const double rho = spectral_log_growth(g);
    const std::size_t n = 24;
    const double trace = count_periodic_po(g, n);
    // trace(A^n) <= V * rho^n.
    if (trace != kNegInf) ASSERT_LE(trace / n, rho + std::log(8.0) / n + 1e-9);
  }
}

TEST(PseudoOrbitProperties, EdgeListHasOneLinePerEdge) {
  const TransitionGraph g = TransitionGraph::from_adjacency({{1, 1}, {1, 0}});
  std::ostringstream out;
  write_edge_list(out, g);
  EXPECT_EQ(out.str(), "0 0\n0 1\n1 0\n");
}

TEST(ScaleFunctionTest, ParsesAndEvaluates) {
  EXPECT_EQ(ScaleFunction::parse("one").name(), "one");
  EXPECT_EQ(ScaleFunction::parse("log").name(), "log");
  EXPECT_EQ(ScaleFunction::parse("powlog:2").name(), "powlog:2");
  EXPECT_THROW(ScaleFunction::parse("cubic"), UsageError);
  EXPECT_THROW(ScaleFunction::parse("powlog:x"), UsageError);
  EXPECT_THROW(ScaleFunction::log_reciprocal()(0.0), DomainError);
  EXPECT_DOUBLE_EQ(ScaleFunction::constant_one()(0.3), 1.0);
  EXPECT_DOUBLE_EQ(ScaleFunction::log_reciprocal()(1.0), 1.0);
  EXPECT_NEAR(ScaleFunction::power_log(2.0)(std::exp(-1.0)), 4.0, 1e-12);
}

TEST(ScaleFunctionTest, PositiveOnUnitInterval) {
  for (const char* name : {"one", "log", "powlog:0.5", "powlog:3"}) {
    const ScaleFunction s = ScaleFunction::parse(name);
    for (double x = 1e-300; x < 1.0; x *= 7.0) ASSERT_GT(s(x), 0.0) << name;
  }
}

TEST(ScaleFunctionTest, RatioTendsToOneAtZero) {
  for (const char* name : {"one", "log", "powlog:0.5", "powlog:2"}) {
    const ScaleFunction s = ScaleFunction::parse(name);
    for (double lambda : {0.5, 2.0}) {
      double prev = std::numeric_limits<double>::infinity();
      for (double x = 1e-4; x > 1e-300; x *= 1e-8) {
        const double dev = std::abs(s(lambda * x) / s(x) - 1.0);
        ASSERT_LE(dev, prev + 1e-15) << name;
        prev = dev;
      }
      EXPECT_LE(std::abs(s(lambda * 1e-100) / s(1e-100) - 1.0), 1e-2) << name;
    }
  }
  const ScaleFunction log_s = ScaleFunction::log_reciprocal();
  EXPECT_LE(std::abs(log_s(0.5e-40) / log_s(1e-40) - 1.0), 1e-2);
  // At x = 1e-8 the log-reciprocal ratio is 1 + log 2 / (log 1e8 + 1).
  EXPECT_NEAR(log_s(0.5e-8) / log_s(1e-8), 1.0 + std::log(2.0) / (std::log(1e8) + 1.0),
              1e-12);
}

}  // namespace
}  // namespace fkp
