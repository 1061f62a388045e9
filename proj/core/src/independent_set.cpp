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

#include "fkp/independent_set.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "fkp/errors.hpp"
#include "fkp/log_space.hpp"

namespace fkp {

namespace {

class BranchAndBound {
 public:
  BranchAndBound(std::vector<std::uint64_t> closed_nbr, std::vector<double> w)
      : closed_nbr_(std::move(closed_nbr)), w_(std::move(w)) {}

  std::uint64_t solve(std::uint64_t all) {
    search(all, 0.0, 0);
    return best_set_;
  }

 private:
  void search(std::uint64_t cand, double cur, std::uint64_t chosen) {
    // Vertices without neighbours among the candidates are always taken.
    std::uint64_t free = 0;
    double bound = cur;
    int pick = -1;
    int pick_degree = -1;
    for (std::uint64_t rest = cand; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      bound += w_[static_cast<std::size_t>(v)];
      const int degree =
          std::popcount(closed_nbr_[static_cast<std::size_t>(v)] & cand) - 1;
      if (degree == 0) {
        free |= std::uint64_t{1} << v;
      } else if (degree > pick_degree) {
        pick_degree = degree;
        pick = v;
      }
    }
    if (bound <= best_ && best_set_initialized_) return;
    if (free != 0) {
      for (std::uint64_t rest = free; rest != 0; rest &= rest - 1) {
        cur += w_[static_cast<std::size_t>(std::countr_zero(rest))];
      }
      chosen |= free;
      cand &= ~free;
    }
    if (cand == 0) {
      if (!best_set_initialized_ || cur > best_) {
        best_ = cur;
        best_set_ = chosen;
        best_set_initialized_ = true;
      }
      return;
    }
    const auto v = static_cast<std::size_t>(pick);
    search(cand & ~closed_nbr_[v], cur + w_[v], chosen | (std::uint64_t{1} << v));
    search(cand & ~(std::uint64_t{1} << v), cur, chosen);
  }

  std::vector<std::uint64_t> closed_nbr_;
  std::vector<double> w_;
  double best_ = 0.0;
  std::uint64_t best_set_ = 0;
  bool best_set_initialized_ = false;
};

}  // namespace

std::vector<std::size_t> exact_max_weight_independent_set(
    const std::vector<double>& log_weights,
    const std::vector<std::vector<std::size_t>>& adjacency,
    std::size_t component_cap) {
  const std::size_t n = log_weights.size();
  if (adjacency.size() != n) {
    throw UsageError("adjacency and weights must have the same size");
  }
  component_cap = std::min<std::size_t>(component_cap, 64);

  std::vector<int> component(n, -1);
  std::vector<std::size_t> result;
  for (std::size_t start = 0; start < n; ++start) {
    if (component[start] >= 0) continue;
    std::vector<std::size_t> members{start};
    component[start] = static_cast<int>(start);
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (std::size_t nb : adjacency[members[head]]) {
        if (nb >= n) throw UsageError("adjacency index out of range");
        if (component[nb] < 0) {
          component[nb] = static_cast<int>(start);
          members.push_back(nb);
        }
      }
    }
    if (members.size() == 1) {
      result.push_back(start);
      continue;
    }
    if (members.size() > component_cap) {
      throw ResourceError("conflict component of " + std::to_string(members.size()) +
                              " items exceeds exact-search cap of " +
                              std::to_string(component_cap),
                          members.size());
    }
    std::sort(members.begin(), members.end());
    const std::size_t top = *std::max_element(
        members.begin(), members.end(),
        [&](std::size_t a, std::size_t b) { return log_weights[a] < log_weights[b]; });
    const double shift = log_weights[top] == kNegInf ? 0.0 : log_weights[top];
    std::vector<std::uint64_t> closed(members.size(), 0);
    std::vector<double> w(members.size(), 0.0);
    for (std::size_t a = 0; a < members.size(); ++a) {
      w[a] = std::exp(log_weights[members[a]] - shift);
      closed[a] |= std::uint64_t{1} << a;
      for (std::size_t nb : adjacency[members[a]]) {
        const auto pos = static_cast<std::size_t>(
            std::lower_bound(members.begin(), members.end(), nb) - members.begin());
        closed[a] |= std::uint64_t{1} << pos;
        closed[pos] |= std::uint64_t{1} << a;
      }
    }
    const std::uint64_t all = members.size() == 64
                                  ? ~std::uint64_t{0}
                                  : (std::uint64_t{1} << members.size()) - 1;
    BranchAndBound solver(std::move(closed), std::move(w));
    for (std::uint64_t rest = solver.solve(all); rest != 0; rest &= rest - 1) {
      result.push_back(members[static_cast<std::size_t>(std::countr_zero(rest))]);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace fkp
