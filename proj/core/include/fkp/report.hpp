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

// Side-by-side comparison of every pressure route against a reference value.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fkp/analysis.hpp"
#include "fkp/bowen.hpp"
#include "fkp/dynamics.hpp"
#include "fkp/pseudo_orbit.hpp"

namespace fkp {

struct ReportGrids {
  std::vector<std::size_t> n_values;
  /// Bowen and FK scales.
  std::vector<double> epsilons;
  bool include_fk = true;
  /// Pseudo-orbit rows, one per alpha. Empty disables them.
  std::vector<double> alphas;
  double net_resolution = 0.0;
  /// Coarse partition resolution; 0 means the smallest epsilon.
  double partition_resolution = 0.0;
  std::size_t state_cap = kDefaultStateCap;
  /// Scaled rows (direct mode) at every epsilon.
  std::vector<ScaleFunction> scales;
  double tail_fraction = 0.5;
  PoolBuilder pool = default_pool();
  /// Used when no closed-form value is known for the system.
  std::optional<double> reference;
};

struct ReportRow {
  PressureSeries series;
  LimitEstimate estimate;
  std::optional<double> oracle;
  /// estimate - oracle.
  std::optional<double> gap;
  /// FK rows: every per_n is at most the Bowen per_n at the same (n, eps).
  std::optional<bool> fk_below_bowen;
  /// FK rows: estimate <= oracle (within 1e-9).
  std::optional<bool> fk_from_below;
  /// Pseudo-orbit rows: estimate >= oracle (within 1e-9).
  std::optional<bool> po_from_above;
};

struct TheoremReport {
  std::string system;
  std::string potential;
  std::optional<double> oracle;
  std::vector<ReportRow> rows;
  /// Rows that could not be produced and why.
  std::vector<std::string> notes;
};

inline constexpr double kDirectionSlack = 1e-9;

/// Runs the Bowen, FK, pseudo-orbit and scaled routes over the grids. Needs a
/// closed-form reference (reference_pressure) or grids.reference.
TheoremReport theorem_report(const SystemSpec& sys, const Potential& f,
                             const ReportGrids& grids);

}  // namespace fkp
