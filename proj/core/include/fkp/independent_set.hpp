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

// Separated-set selection shared by the Bowen, FK and FK-pseudo-orbit routes.
// A pool item conflicts with another when the two lie within epsilon; a
// separated set is an independent set of the conflict graph.

#pragma once

#include <cstddef>
#include <vector>

namespace fkp {

/// Greedy maximal separated subset of {0..pool_size-1} in index order: item i
/// is kept iff `within(i, k)` is false for every already kept k. The result
/// is maximal, hence spanning for the same relation.
template <class Within>
std::vector<std::size_t> greedy_separated(std::size_t pool_size, Within&& within) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < pool_size; ++i) {
    bool near = false;
    for (std::size_t k : kept) {
      if (within(i, k)) {
        near = true;
        break;
      }
    }
    if (!near) kept.push_back(i);
  }
  return kept;
}

inline constexpr std::size_t kDefaultComponentCap = 60;

/// Exact maximum-weight independent set. Weights are given as logs; the
/// objective is sum exp(log_weight). Solved per connected component by
/// branch and bound; a component larger than `component_cap` (at most 64)
/// raises ResourceError. Returned indices are ascending.
std::vector<std::size_t> exact_max_weight_independent_set(
    const std::vector<double>& log_weights,
    const std::vector<std::vector<std::size_t>>& adjacency,
    std::size_t component_cap = kDefaultComponentCap);

}  // namespace fkp
