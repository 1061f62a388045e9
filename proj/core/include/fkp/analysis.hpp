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

// Pressure series, finite-n limit extrapolation and exact pressure oracles
// for symbolic systems.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fkp/dynamics.hpp"

namespace fkp {

/// Which counting route produced a series.
enum class Route { bowen, fk, po, ppo, fkpo, scaled };

std::string to_string(Route r);

/// Parameters a series was computed at. Unused ones stay empty.
struct SeriesParams {
  std::optional<double> epsilon;
  std::optional<double> alpha;
  std::optional<double> delta;
  std::optional<std::size_t> n_delta;
  std::optional<std::string> scale;
  std::optional<double> scale_value;  // S(epsilon)
  std::optional<double> net_resolution;
  std::optional<double> partition_resolution;
};

/// One finite-n sample: log of the counting quantity and its per-step rate.
struct PressureSample {
  std::size_t n = 0;
  double epsilon = 0.0;
  double log_sum = 0.0;
  double per_n = 0.0;
};

struct PressureSeries {
  Route route = Route::bowen;
  SeriesParams params;
  std::vector<PressureSample> samples;
  /// Set when a resource cap stopped the series early.
  bool truncated = false;

  /// Throws UsageError unless n is strictly increasing and per_n is finite.
  void validate() const;
};

enum class LimitMethod { tail_mean, linear_fit_slope, difference };

std::string to_string(LimitMethod m);

struct LimitEstimate {
  double value = 0.0;
  LimitMethod method = LimitMethod::tail_mean;
  /// max - min of per_n over the last three samples.
  double dispersion = 0.0;
  /// Mean of per_n over the tail window.
  double tail_mean = 0.0;
  /// Max of per_n over the tail window (finite limsup surrogate).
  double tail_max = 0.0;
  /// (n2 v2 - n1 v1) / (n2 - n1) on the last two samples; cancels c/n terms.
  double difference = 0.0;
  /// Least-squares slope of log_sum against n over the tail window.
  double linear_fit_slope = 0.0;
  std::size_t window = 0;
};

/// Summarizes the tail of a series. Every estimator is computed; `value`
/// holds the one selected by `method`. Needs at least three samples and
/// 0 < tail_fraction <= 1; the tail window is the last
/// ceil(tail_fraction * count) samples.
LimitEstimate extrapolate(const PressureSeries& series, double tail_fraction,
                          LimitMethod method = LimitMethod::tail_mean);

/// log sum_i exp(f_i) for the full shift on f.size() symbols with a potential
/// depending on the first symbol only.
double exact_pressure_full_shift(std::span<const double> symbol_values);

inline constexpr double kSftRelativeTolerance = 1e-12;

/// log of the Perron root of diag(exp f) A. A must be square, 0/1 and
/// irreducible (UsageError otherwise).
double exact_pressure_sft(const Matrix01& transitions,
                          std::span<const double> symbol_values);

bool is_irreducible(const Matrix01& transitions);

/// Exact pressure when one is known in closed form for this system and
/// potential: shifts with first-symbol potentials, finite systems (maximum
/// cycle average), rotations (integral of f), doubling and tent maps with
/// f = 0.
std::optional<double> reference_pressure(const SystemSpec& sys,
                                         const Potential& f);

}  // namespace fkp
