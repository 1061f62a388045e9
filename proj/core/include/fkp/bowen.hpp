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

// Classical pressure through the Bowen metric d_n(x,y) = max_{i<n} d(T^i x,
// T^i y): (n, eps)-separated sets, the Birkhoff-weighted sums over them, and
// per-n pressure samples.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fkp/analysis.hpp"
#include "fkp/dynamics.hpp"

namespace fkp {

enum class SetMode { separated, spanning };

struct SeparatedSet {
  std::vector<State> points;
  std::size_t n = 0;
  double epsilon = 0.0;
  SetMode mode = SetMode::separated;
};

/// How the supremum over separated subsets of a pool is approximated.
enum class SetSearch { greedy, exact };

double bowen_distance(const SystemSpec& sys, const State& x, const State& y,
                      std::size_t n);

/// Greedy maximal (n, eps)-separated subset of `pool` taken in pool order.
/// Pairs at d_n == eps are not separated. The result also (n, eps)-spans the
/// pool. With SetSearch::exact the maximum-weight separated subset for
/// potential `f` is returned instead (small pools only).
SeparatedSet max_separated_set(const SystemSpec& sys, std::span<const State> pool,
                               std::size_t n, double epsilon);
SeparatedSet max_separated_set(const SystemSpec& sys, std::span<const State> pool,
                               std::size_t n, double epsilon, SetSearch search,
                               const Potential& f, double scale = 1.0);

/// Pairwise d_n > eps.
bool is_separated(const SystemSpec& sys, const SeparatedSet& set);
/// Every pool point is within d_n <= eps of some member.
bool spans(const SystemSpec& sys, const SeparatedSet& set,
           std::span<const State> pool);

/// log sum_{x in set} exp(scale * S_n f(x)), summed in log space.
double log_sr_sum(const SystemSpec& sys, const Potential& f,
                  const SeparatedSet& set, double scale = 1.0);

/// Builds the candidate pool for horizon n and scale eps.
using PoolBuilder =
    std::function<std::vector<State>(const SystemSpec&, std::size_t, double)>;

/// Length-n cylinder words for shifts, every point for finite spaces and
/// build_net(sys, eps/2) for circle/interval systems.
PoolBuilder default_pool(std::size_t cap = kDefaultNetCap);

/// Like default_pool but circle/interval nets are refined to resolution
/// (eps/2) / L^{n-1}, L the expansion bound, so that orbits of expanding
/// maps stay resolved up to the horizon. Resolution is clamped so the net
/// stays below `cap` points.
PoolBuilder refined_pool(std::size_t cap = 4096);

PressureSample pressure_sample(const SystemSpec& sys, const Potential& f,
                               std::size_t n, double epsilon,
                               std::span<const State> pool, double scale = 1.0);

/// One sample per n: log of the greedy separated sum and log / n.
PressureSeries pressure_series(const SystemSpec& sys, const Potential& f,
                               std::span<const std::size_t> n_range,
                               double epsilon, const PoolBuilder& pool_builder,
                               double scale = 1.0);

}  // namespace fkp
