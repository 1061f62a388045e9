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

// FK-alpha-pseudo-chains and FK-alpha-pseudo-orbits.
//
// (x_0, ..., x_{n-1}) is an FK-alpha-pseudo-chain of density 1 - delta when
// there are k > (1 - delta) n indices i_1 < ... < i_k and j_1 < ... < j_k in
// {0..n-1} with d(T^{j_{t+1} - j_t} x_{i_t}, x_{i_{t+1}}) <= alpha. Only the
// gaps j_{t+1} - j_t matter, so the best chain takes j_1 = 0 and the
// smallest admissible gap at every step; a chain of length k exists iff the
// smallest total gap over k-step index paths is at most n - 1.
//
// A sequence is an FK-alpha-pseudo-orbit controlled by N when checkpoints
// s_0 <= N, s_{i+1} - s_i <= N exist such that every window
// (x_{s_a}, ..., x_{s_b - 1}), a < b, is such a chain. Membership is decided
// on a finite prefix of length L: the checkpoints must stay within L and the
// last one must satisfy s_last + N > L.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fkp/dynamics.hpp"

namespace fkp {

struct ChainWitness {
  std::size_t k = 0;
  std::vector<std::size_t> i_indices;
  std::vector<std::size_t> j_indices;
};

/// N_delta = max(4, ceil(2 / delta)).
std::size_t default_n_delta(double delta);

struct FkpoParams {
  double alpha = 0.0;
  double delta = 0.0;
  std::size_t n_delta = 0;

  /// Parameters with the default N_delta.
  static FkpoParams with_default(double alpha, double delta);
  /// Throws UsageError unless alpha > 0, 0 < delta <= 1, n_delta >= 1.
  void validate() const;
};

struct WindowWitness {
  std::size_t begin = 0;  // s_a
  std::size_t end = 0;    // s_b, exclusive
  ChainWitness chain;     // indices relative to begin
};

struct FkpoWitness {
  std::vector<std::size_t> s_sequence;
  std::vector<WindowWitness> windows;
};

struct FkpoResult {
  bool member = false;
  std::optional<FkpoWitness> witness;
};

/// Strict density test k > (1 - delta) n.
bool dense_enough(std::size_t k, std::size_t n, double delta);

/// A chain of maximum length; O(n^3) after an O(n^2) table of smallest gaps.
ChainWitness longest_chain(const SystemSpec& sys, std::span<const State> seq,
                           double alpha);

bool is_fk_pseudo_chain(const SystemSpec& sys, std::span<const State> seq,
                        double alpha, double delta);

/// d(T x_i, x_{i+1}) <= alpha for every i.
bool is_pseudo_chain(const SystemSpec& sys, std::span<const State> seq, double alpha);

/// Checks index ranges, monotonicity and every step inequality (not density).
bool verify_chain(const SystemSpec& sys, std::span<const State> seq, double alpha,
                  const ChainWitness& w);

/// Finite-horizon membership. Checkpoints are searched with the smallest s_0
/// first, then the smallest gaps; the first witness found is returned when
/// `with_witness` is set. Needs seq.size() >= n_delta + 1.
FkpoResult is_fkpo_prefix(const SystemSpec& sys, std::span<const State> seq,
                          const FkpoParams& params, bool with_witness = true);

/// Re-checks a membership witness against every defining inequality.
bool verify_fkpo_witness(const SystemSpec& sys, std::span<const State> seq,
                         const FkpoParams& params, const FkpoWitness& w);

/// Audit text: parameters, checkpoints and every window with its steps.
std::string witness_report(const SystemSpec& sys, std::span<const State> seq,
                           const FkpoParams& params, const FkpoWitness& w);

/// Drops the first coordinate. Needs length >= 2.
std::vector<State> shift_sequence(std::span<const State> seq);

inline constexpr std::size_t kDefaultEnumerationCap = 2000000;

struct FkpoBruteForce {
  double log_sum = 0.0;
  /// Accepted sequences of length n + tail, as point indices.
  std::vector<std::vector<std::size_t>> members;
  /// Distinct n-prefixes of the accepted sequences.
  std::vector<std::vector<std::size_t>> prefixes;
  /// Indices into `prefixes` of the maximum-weight separated subset.
  std::vector<std::size_t> selected;
  std::size_t enumerated = 0;
};

/// Exact FKPO separated sum on a finite system with at most 6 points:
/// enumerates every sequence of length n + tail_length, keeps the members,
/// and takes the maximum-weight subset of their n-prefixes that is pairwise
/// separated (d(x_i, y_i) > eps for some i < n). Limits n <= 6,
/// tail_length <= 6 and `cap` sequences; beyond them ResourceError.
FkpoBruteForce fkpo_sr_bruteforce(const SystemSpec& sys, const Potential& f,
                                  std::size_t n, double epsilon,
                                  const FkpoParams& params, std::size_t tail_length,
                                  std::size_t cap = kDefaultEnumerationCap);

}  // namespace fkp
