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

// Executes one configured route over its parameter grid.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "json.hpp"
#include "verify.hpp"

namespace fkp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitResource = 2;
inline constexpr int kExitInvariant = 3;

/// One parameter combination: a value per n, plus an optional oracle per n.
struct Record {
  std::string route;
  std::optional<double> epsilon;
  std::optional<double> alpha;
  std::optional<double> delta;
  std::optional<std::size_t> n_delta;
  std::string scale;
  std::vector<std::pair<std::size_t, double>> values;
  /// Same length as `values`.
  std::vector<std::optional<double>> oracles;
  bool truncated = false;
  double seconds = 0.0;
  /// Estimates, flags, witnesses, notes.
  nlohmann::json extra = nlohmann::json::object();
};

struct RunResult {
  std::vector<Record> records;
  std::vector<CheckResult> checks;
  std::vector<std::string> diagnostics;
  bool truncated = false;
  double seconds = 0.0;

  int exit_code() const;
};

RunResult execute(const ExperimentConfig& config);

/// CSV with the header route,n,epsilon,alpha,delta,N_delta,scale,value,oracle,gap.
void write_csv(std::ostream& out, const RunResult& result);

/// 12 significant digits, independent of the global locale.
std::string format_value(double v);

nlohmann::json report_json(const ExperimentConfig& config, const RunResult& result);

/// Executes and writes every configured output. CSV goes to `stdout_sink`
/// when no path is configured; progress and check tables go to `log`.
int run(const ExperimentConfig& config, std::ostream& stdout_sink, std::ostream& log);

}  // namespace fkp::cli
