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

#include "fkp/report.hpp"

#include <algorithm>
#include <string>

#include "fkp/errors.hpp"
#include "fkp/fk_metric.hpp"

namespace fkp {

namespace {

ReportRow make_row(PressureSeries series, double tail_fraction,
                   std::optional<double> oracle) {
  ReportRow row;
  row.estimate = extrapolate(series, tail_fraction);
  row.series = std::move(series);
  row.oracle = oracle;
  if (oracle) row.gap = row.estimate.value - *oracle;
  return row;
}

}  // namespace

TheoremReport theorem_report(const SystemSpec& sys, const Potential& f,
                             const ReportGrids& grids) {
  if (grids.n_values.size() < 3) throw UsageError("report needs at least three n values");
  if (grids.epsilons.empty()) throw UsageError("report needs at least one epsilon");
  f.check_compatible(sys);

  TheoremReport report;
  report.system = sys.name();
  report.potential = f.describe();
  report.oracle = reference_pressure(sys, f);
  if (!report.oracle) report.oracle = grids.reference;
  if (!report.oracle) {
    throw UsageError("no reference pressure is known for " + sys.name() +
                     "; configure one");
  }
  const double oracle = *report.oracle;

  for (double eps : grids.epsilons) {
    PressureSeries bowen = pressure_series(sys, f, grids.n_values, eps, grids.pool);
    const std::vector<PressureSample> bowen_samples = bowen.samples;
    report.rows.push_back(make_row(std::move(bowen), grids.tail_fraction, oracle));
    if (!grids.include_fk) continue;
    PressureSeries fk = pfk_series(sys, f, grids.n_values, eps, grids.pool);
    bool below = true;
    for (std::size_t i = 0; i < fk.samples.size(); ++i) {
      below = below && fk.samples[i].per_n <= bowen_samples[i].per_n + kDirectionSlack;
    }
    ReportRow row = make_row(std::move(fk), grids.tail_fraction, oracle);
    row.fk_below_bowen = below;
    row.fk_from_below = row.estimate.value <= oracle + kDirectionSlack;
    report.rows.push_back(std::move(row));
  }

  if (!grids.alphas.empty()) {
    if (!(grids.net_resolution > 0.0)) {
      throw UsageError("pseudo-orbit rows need a net resolution");
    }
    const double partition =
        grids.partition_resolution > 0.0
            ? grids.partition_resolution
            : *std::min_element(grids.epsilons.begin(), grids.epsilons.end());
    for (double alpha : grids.alphas) {
      ScaledGrid g;
      g.n_values = grids.n_values;
      g.epsilon = partition;
      g.alpha = alpha;
      g.net_resolution = grids.net_resolution;
      g.partition_resolution = partition;
      g.state_cap = grids.state_cap;
      PressureSeries po = scaled_pressure_series(sys, f, ScaleFunction::constant_one(),
                                                 ScaledMode::po, g);
      po.route = Route::po;
      if (po.samples.size() < 3) {
        report.notes.push_back("po row at alpha=" + std::to_string(alpha) +
                               " has fewer than three samples before the state cap");
        continue;
      }
      ReportRow row = make_row(std::move(po), grids.tail_fraction, oracle);
      row.po_from_above = row.estimate.value >= oracle - kDirectionSlack;
      report.rows.push_back(std::move(row));
    }
  }

  for (const ScaleFunction& s : grids.scales) {
    for (double eps : grids.epsilons) {
      ScaledGrid g;
      g.n_values = grids.n_values;
      g.epsilon = eps;
      g.pool = grids.pool;
      report.rows.push_back(make_row(
          scaled_pressure_series(sys, f, s, ScaledMode::direct, g), grids.tail_fraction,
          oracle));
    }
  }
  return report;
}

}  // namespace fkp
