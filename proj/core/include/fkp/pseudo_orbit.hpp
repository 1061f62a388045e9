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

// alpha-pseudo-orbits supported on a finite net.
//
// A net point u may be followed by v when d(Tu, v) <= alpha. Paths in this
// transition graph are the net-supported pseudo-orbits. Their growth is
// measured three ways: the spectral radius of the weighted adjacency
// B[u][v] = w(u) [u -> v], the number of distinct coarse cell itineraries
// (lazy subset construction over a partition), and closed paths
// (trace of B^n).

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fkp/analysis.hpp"
#include "fkp/bowen.hpp"
#include "fkp/dynamics.hpp"

namespace fkp {

struct TransitionGraph {
  std::vector<State> vertices;
  double alpha = 0.0;
  double scale = 1.0;
  /// Ascending successor lists.
  std::vector<std::vector<std::size_t>> successors;
  /// scale * f(u), so B[u][v] = exp(log_weight[u]) on every edge u -> v.
  std::vector<double> log_weight;

  std::size_t vertex_count() const { return successors.size(); }
  std::size_t edge_count() const;
  bool has_edge(std::size_t u, std::size_t v) const;

  /// Graph given directly by a 0/1 adjacency matrix (no underlying states).
  /// Empty `log_weights` means all zero.
  static TransitionGraph from_adjacency(const Matrix01& adjacency,
                                        std::vector<double> log_weights = {});
};

/// Edges u -> v iff d(T u, v) <= alpha; vertex weight exp(scale * f(u)).
TransitionGraph build_po_graph(const SystemSpec& sys, const EpsilonNet& net,
                               double alpha, const Potential& f, double scale = 1.0);

inline constexpr double kSpectralTolerance = 1e-10;
inline constexpr int kSpectralMaxIterations = 10000;

/// log of the spectral radius of B (-inf for an acyclic graph). Power
/// iteration from the all-ones vector on each strongly connected component,
/// shifted by a multiple of the identity so periodic components converge.
/// Throws ConvergenceError with the last two log estimates.
double spectral_log_growth(const TransitionGraph& g);

/// Coarse cells: the Voronoi regions of the points of a partition net
/// (ties to the lowest index).
/// Circle/interval: ceil(1/resolution) cells of equal width with midpoint
/// centers. Shifts: cylinders of the first m symbols, 2^{-m} < resolution.
/// Finite spaces: one cell per point.
EpsilonNet partition_net(const SystemSpec& sys, double resolution);

inline constexpr std::size_t kDefaultStateCap = 200000;

struct CoarseWordCount {
  /// log of the number of distinct length-n cell words realized by paths.
  double log_count = 0.0;
  /// log sum over those words of prod_i exp(scale * f(center(w_i))).
  double log_weighted = 0.0;
  /// Subset states created by the determinization.
  std::size_t states = 0;
  /// Per-step bound on the weight error from evaluating f at cell centers.
  double center_error = 0.0;
};

/// Counts the coarse itineraries of graph paths of length n. The subset
/// automaton is built lazily from a virtual start state that reaches every
/// vertex; more than `state_cap` subset states raises ResourceError carrying
/// the depth reached.
CoarseWordCount count_coarse_words(const SystemSpec& sys, const TransitionGraph& g,
                                   const EpsilonNet& partition, std::size_t n,
                                   const Potential& f, double scale = 1.0,
                                   std::size_t state_cap = kDefaultStateCap);

/// log trace(B^n), by repeated squaring in log space.
double count_periodic_po(const TransitionGraph& g, std::size_t n);

/// Number of closed paths of length n ignoring weights, in integer arithmetic.
/// Throws ResourceError on 64-bit overflow.
std::uint64_t closed_path_count(const TransitionGraph& g, std::size_t n);

/// One "u v" line per edge.
void write_edge_list(std::ostream& out, const TransitionGraph& g);

class ScaleFunction {
 public:
  enum class Kind { constant_one, log_reciprocal, power_log };

  static ScaleFunction constant_one();
  /// S(x) = log(1/x) + 1.
  static ScaleFunction log_reciprocal();
  /// S(x) = (log(1/x) + 1)^p, p > 0.
  static ScaleFunction power_log(double power);
  /// Parses "one", "log" or "powlog:<p>".
  static ScaleFunction parse(const std::string& text);

  Kind kind() const { return kind_; }
  double power() const { return power_; }
  double operator()(double x) const;
  std::string name() const;

 private:
  Kind kind_ = Kind::constant_one;
  double power_ = 1.0;
};

enum class ScaledMode { direct, po, ppo };

std::string to_string(ScaledMode m);

struct ScaledGrid {
  std::vector<std::size_t> n_values;
  double epsilon = 0.0;
  /// po / ppo only.
  double alpha = 0.0;
  double net_resolution = 0.0;
  /// Partition resolution for po; 0 means epsilon.
  double partition_resolution = 0.0;
  std::size_t state_cap = kDefaultStateCap;
  /// direct only.
  PoolBuilder pool = default_pool();
};

/// Scaled pressure samples: per_n = log(count weighted by exp(S(eps) S_n f)) /
/// (n S(eps)). A resource cap hit in po mode ends the series early with
/// `truncated` set. In ppo mode an n without closed paths has no sample.
PressureSeries scaled_pressure_series(const SystemSpec& sys, const Potential& f,
                                      const ScaleFunction& s, ScaledMode mode,
                                      const ScaledGrid& grid);

}  // namespace fkp
