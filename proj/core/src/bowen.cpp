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

#include "fkp/bowen.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "fkp/errors.hpp"
#include "fkp/independent_set.hpp"
#include "fkp/log_space.hpp"

namespace fkp {

namespace {

using Orbits = std::vector<std::vector<State>>;

Orbits orbits_of(const SystemSpec& sys, std::span<const State> pool,
                 std::size_t n) {
  Orbits out;
  out.reserve(pool.size());
  for (const State& x : pool) out.push_back(orbit_segment(sys, x, n).points);
  return out;
}

bool bowen_within(const SystemSpec& sys, const std::vector<State>& a,
                  const std::vector<State>& b, double eps) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (distance_unchecked(sys, a[i], b[i]) > eps) return false;
  }
  return true;
}

// On shifts d_n(u, v) <= eps iff u and v agree on their first n + m - 1
// symbols, m = agreement_length(eps).
std::string shift_key(const Word& w, std::size_t length) {
  std::string key(length, '\0');
  for (std::size_t i = 0; i < length; ++i) key[i] = static_cast<char>(w.at(i));
  return key;
}

std::size_t shift_key_length(std::size_t n, double eps) {
  return n + agreement_length(eps) - 1;
}

}  // namespace

double bowen_distance(const SystemSpec& sys, const State& x, const State& y,
                      std::size_t n) {
  if (n == 0) throw UsageError("bowen_distance needs n >= 1");
  check_state(sys, x);
  check_state(sys, y);
  State a = x;
  State b = y;
  double best = distance_unchecked(sys, a, b);
  for (std::size_t i = 1; i < n; ++i) {
    a = evaluate_map_unchecked(sys, a);
    b = evaluate_map_unchecked(sys, b);
    best = std::max(best, distance_unchecked(sys, a, b));
  }
  return best;
}

SeparatedSet max_separated_set(const SystemSpec& sys, std::span<const State> pool,
                               std::size_t n, double epsilon) {
  return max_separated_set(sys, pool, n, epsilon, SetSearch::greedy,
                           Potential::zero());
}

SeparatedSet max_separated_set(const SystemSpec& sys, std::span<const State> pool,
                               std::size_t n, double epsilon, SetSearch search,
                               const Potential& f, double scale) {
  if (pool.empty()) throw UsageError("separated set needs a nonempty pool");
  if (n == 0) throw UsageError("separated set needs n >= 1");
  if (!(epsilon > 0.0)) throw UsageError("separated set needs epsilon > 0");
  for (const State& x : pool) check_state(sys, x);

  SeparatedSet out;
  out.n = n;
  out.epsilon = epsilon;
  out.mode = SetMode::separated;

  if (search == SetSearch::greedy && sys.is_shift()) {
    const std::size_t len = shift_key_length(n, epsilon);
    std::unordered_set<std::string> seen;
    for (const State& x : pool) {
      if (seen.insert(shift_key(std::get<Word>(x), len)).second) {
        out.points.push_back(x);
      }
    }
    return out;
  }

  const Orbits orbits = orbits_of(sys, pool, n);
  auto within = [&](std::size_t i, std::size_t k) {
    return bowen_within(sys, orbits[i], orbits[k], epsilon);
  };
  std::vector<std::size_t> chosen;
  if (search == SetSearch::greedy) {
    chosen = greedy_separated(pool.size(), within);
  } else {
    std::vector<double> weights(pool.size());
    std::vector<std::vector<std::size_t>> adjacency(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
      double s = 0.0;
      for (const State& p : orbits[i]) s += f(sys, p);
      weights[i] = scale * s;
      for (std::size_t k = i + 1; k < pool.size(); ++k) {
        if (within(i, k)) {
          adjacency[i].push_back(k);
          adjacency[k].push_back(i);
        }
      }
    }
    chosen = exact_max_weight_independent_set(weights, adjacency);
  }
  for (std::size_t i : chosen) out.points.push_back(pool[i]);
  return out;
}

bool is_separated(const SystemSpec& sys, const SeparatedSet& set) {
  const Orbits orbits = orbits_of(sys, set.points, set.n);
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    for (std::size_t k = i + 1; k < orbits.size(); ++k) {
      if (bowen_within(sys, orbits[i], orbits[k], set.epsilon)) return false;
    }
  }
  return true;
}

bool spans(const SystemSpec& sys, const SeparatedSet& set,
           std::span<const State> pool) {
  const Orbits members = orbits_of(sys, set.points, set.n);
  for (const State& x : pool) {
    const auto orbit = orbit_segment(sys, x, set.n).points;
    const bool covered = std::any_of(members.begin(), members.end(), [&](const auto& m) {
      return bowen_within(sys, orbit, m, set.epsilon);
    });
    if (!covered) return false;
  }
  return true;
}

double log_sr_sum(const SystemSpec& sys, const Potential& f,
                  const SeparatedSet& set, double scale) {
  f.check_compatible(sys);
  std::vector<double> terms;
  terms.reserve(set.points.size());
  for (const State& x : set.points) {
    terms.push_back(scale * birkhoff_sum(sys, f, x, set.n));
  }
  return log_sum_exp(terms);
}

PoolBuilder default_pool(std::size_t cap) {
  return [cap](const SystemSpec& sys, std::size_t n, double eps) {
    std::vector<State> pool;
    if (sys.is_shift()) {
      for (Word& w : cylinder_words(sys, n, cap)) pool.emplace_back(std::move(w));
      return pool;
    }
    return build_net(sys, eps / 2.0, cap).points;
  };
}

PoolBuilder refined_pool(std::size_t cap) {
  return [cap](const SystemSpec& sys, std::size_t n, double eps) {
    if (!sys.is_real()) return default_pool(cap)(sys, n, eps);
    const double lip = std::max(1.0, sys.expansion_bound());
    double res = (eps / 2.0) / std::pow(lip, static_cast<double>(n - 1));
    const double floor_res = 1.0 / static_cast<double>(cap - 1);
    res = std::max(res, floor_res);
    return build_net(sys, res, cap).points;
  };
}

PressureSample pressure_sample(const SystemSpec& sys, const Potential& f,
                               std::size_t n, double epsilon,
                               std::span<const State> pool, double scale) {
  const SeparatedSet set = max_separated_set(sys, pool, n, epsilon);
  PressureSample s;
  s.n = n;
  s.epsilon = epsilon;
  s.log_sum = log_sr_sum(sys, f, set, scale);
  s.per_n = s.log_sum / static_cast<double>(n);
  return s;
}

PressureSeries pressure_series(const SystemSpec& sys, const Potential& f,
                               std::span<const std::size_t> n_range,
                               double epsilon, const PoolBuilder& pool_builder,
                               double scale) {
  if (n_range.empty()) throw UsageError("pressure_series needs a nonempty n range");
  f.check_compatible(sys);
  PressureSeries series;
  series.route = Route::bowen;
  series.params.epsilon = epsilon;
  for (std::size_t n : n_range) {
    const std::vector<State> pool = pool_builder(sys, n, epsilon);
    series.samples.push_back(pressure_sample(sys, f, n, epsilon, pool, scale));
  }
  series.validate();
  return series;
}

}  // namespace fkp
