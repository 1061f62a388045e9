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

// The Feldman-Katok metric.
//
// An (n, delta)-match of x and y is an order-preserving bijection pi between
// subsets of {0..n-1} with d(T^i x, T^{pi(i)} y) < delta for every matched i.
// fbar_{n,delta}(x, y) = 1 - max|pi| / n and
// d_FKn(x, y) = inf{delta > 0 : fbar_{n,delta}(x, y) < delta}.
//
// The largest match is a longest common subsequence over the boolean
// "close enough" matrix, computed bit-parallel (one machine word per 64
// columns). fbar only changes at the pairwise distances, and the threshold
// test only at the levels t/n, so d_FKn is found exactly among those values.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fkp/analysis.hpp"
#include "fkp/bowen.hpp"
#include "fkp/dynamics.hpp"

namespace fkp {

/// Boolean rows x cols matrix, one bitset per row.
class MatchMatrix {
 public:
  MatchMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words() const { return words_; }

  void set(std::size_t i, std::size_t j) {
    bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
  }
  bool test(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
  }
  std::span<const std::uint64_t> row(std::size_t i) const {
    return {bits_.data() + i * words_, words_};
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

/// Longest order-preserving matching size, bit-parallel, O(rows * cols / 64).
std::size_t lcs_length(const MatchMatrix& m);

/// Certificate of an (n, delta)-match: pi(domain[t]) = range[t].
struct MatchWitness {
  std::size_t size = 0;
  std::vector<std::size_t> domain;
  std::vector<std::size_t> range;
};

/// Longest matching with its index lists, from the full DP table.
MatchWitness lcs_witness(const MatchMatrix& m);

/// Maximum (n, delta)-match between two sequences of equal length
/// (UsageError otherwise). Closeness is strict: d < delta. Index lists are
/// filled only when `with_witness` is set.
MatchWitness best_match_size(const SystemSpec& sys, const OrbitSegment& ox,
                             const OrbitSegment& oy, double delta,
                             bool with_witness = true);

/// The level t/n; every match defect fbar is one of these.
inline double defect_level(std::size_t t, std::size_t n) {
  return static_cast<double>(t) / static_cast<double>(n);
}

double fbar(const SystemSpec& sys, const OrbitSegment& ox,
            const OrbitSegment& oy, double delta);
double fbar(const SystemSpec& sys, const State& x, const State& y,
            std::size_t n, double delta);

struct FkDistanceResult {
  double value = 0.0;
  /// Sorted distinct candidates: pairwise iterate distances and levels t/n.
  std::vector<double> breakpoints;
  /// match_sizes[k] is the best match size for delta in
  /// (breakpoints[k], breakpoints[k+1]]; the last entry covers every delta
  /// above the largest breakpoint.
  std::vector<std::size_t> match_sizes;
};

FkDistanceResult fk_distance(const SystemSpec& sys, const OrbitSegment& ox,
                             const OrbitSegment& oy);
FkDistanceResult fk_distance(const SystemSpec& sys, const State& x,
                             const State& y, std::size_t n);

/// d_FKn(x, y) <= eps, decided with a single matching.
bool fk_within(const SystemSpec& sys, const OrbitSegment& ox,
               const OrbitSegment& oy, double eps);

/// Maximal FK-(n, eps)-separated subset of the pool (pairwise d_FKn > eps),
/// greedy in pool order or exact maximum weight for `f`.
SeparatedSet fk_max_separated_set(const SystemSpec& sys,
                                  std::span<const State> pool, std::size_t n,
                                  double epsilon,
                                  SetSearch search = SetSearch::greedy,
                                  const Potential& f = Potential::zero(),
                                  double scale = 1.0);

bool fk_is_separated(const SystemSpec& sys, const SeparatedSet& set);
/// Every pool point lies within d_FKn <= eps of a member.
bool fk_spans(const SystemSpec& sys, const SeparatedSet& set,
              std::span<const State> pool);

/// log of the Birkhoff-weighted sum over an FK-separated subset of the pool.
double fk_sr_sum(const SystemSpec& sys, const Potential& f,
                 std::span<const State> pool, std::size_t n, double epsilon,
                 SetSearch search = SetSearch::greedy);

PressureSeries pfk_series(const SystemSpec& sys, const Potential& f,
                          std::span<const std::size_t> n_range, double epsilon,
                          const PoolBuilder& pool_builder);

}  // namespace fkp
