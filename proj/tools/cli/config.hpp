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

// Experiment configuration: parsing, validation and canonical echo.
//
// Both the block text format and JSON are flattened to dotted keys
// ("grid.n", "system.kind") before validation, so command-line flags can be
// merged into the same key space. See README.md for the grammar.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fkp/dynamics.hpp"
#include "fkp/fk_pseudo_orbit.hpp"
#include "fkp/pseudo_orbit.hpp"
#include "json.hpp"

namespace fkp::cli {

enum class RouteKind { bowen, fk, po, fkpo, scaled, fkdist, verify, report };

std::string to_string(RouteKind r);
RouteKind parse_route(const std::string& text);

struct SystemConfig {
  /// doubling, rotation, tent, logistic, full_shift, sft or finite.
  std::string kind = "doubling";
  /// theta, slope or r, by kind.
  std::optional<double> parameter;
  int symbols = 0;
  Matrix01 matrix;
  DistanceTable distances;
  std::vector<std::size_t> map;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

struct PotentialConfig {
  /// zero, symbols or polynomial.
  std::string kind = "zero";
  std::vector<double> values;

  friend bool operator==(const PotentialConfig&, const PotentialConfig&) = default;
};

struct GridConfig {
  std::vector<std::size_t> n;
  std::vector<double> epsilon;
  std::vector<double> alpha;
  std::vector<double> delta;
  /// Empty means the default N_delta for each delta.
  std::vector<std::size_t> n_delta;
  std::vector<std::string> scale;
  /// Scaled route mode: direct, po or ppo.
  std::string mode = "direct";
  /// Net resolutions for the pseudo-orbit routes.
  std::vector<double> net;
  /// Coarse partition resolution; 0 means epsilon.
  double partition = 0.0;
  /// FKPO separation scales; empty means epsilon.
  std::vector<double> eps_sep;
  /// FKPO sequence length beyond n.
  std::size_t tail = 6;
  double tail_fraction = 0.5;
  std::optional<double> reference;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct OutputConfig {
  std::string csv;
  std::string json;
  std::string plot_dir;
  std::string edges_dir;

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct CapsConfig {
  std::size_t net = kDefaultNetCap;
  std::size_t states = kDefaultStateCap;
  std::size_t enumeration = kDefaultEnumerationCap;

  friend bool operator==(const CapsConfig&, const CapsConfig&) = default;
};

struct ExperimentConfig {
  RouteKind route = RouteKind::report;
  std::uint64_t seed = 0;
  SystemConfig system;
  PotentialConfig potential;
  GridConfig grid;
  /// fkdist states, in the notation of parse_state.
  std::string x;
  std::string y;
  /// verify suite: all, dynamics, bowen, fk, po, fkpo or analysis.
  std::string suite = "all";
  OutputConfig output;
  CapsConfig caps;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// A raw value with the place it came from, for error messages.
struct Entry {
  std::string value;
  std::string source;  // "cfg.txt:12", "flag --n", ...
};

using EntryMap = std::map<std::string, Entry>;

/// Flattens the block text format. `origin` prefixes line anchors.
EntryMap flatten_text(const std::string& text, const std::string& origin);
/// Flattens a JSON object. Key anchors point at the line of the key.
EntryMap flatten_json(const std::string& text, const std::string& origin);
/// Dispatches on the first non-blank character ('{' means JSON).
EntryMap flatten_config(const std::string& text, const std::string& origin);
EntryMap read_config_file(const std::string& path);

/// Validates keys and values and fills defaults. Throws UsageError naming the
/// offending entry's source.
ExperimentConfig build_config(const EntryMap& entries);

/// Adds flag entries to config entries. A flag that changes the value of a
/// key the config already sets is a usage error naming both sources.
EntryMap merge_flags(const EntryMap& config, const EntryMap& flags);

/// Canonical nested JSON form; build_config(flatten_json(dump)) returns an
/// equal config.
nlohmann::json to_json(const ExperimentConfig& c);

SystemSpec make_system(const SystemConfig& c);
Potential make_potential(const PotentialConfig& c);

/// Real coordinate, symbol string ("0110") or point index, by system kind.
State parse_state(const SystemSpec& sys, const std::string& text);

/// "1/256", "0.25", "1e-3".
double parse_number(const std::string& text);
/// "4..12" or "4, 6, 8" (ranges and items may be mixed).
std::vector<std::size_t> parse_size_list(const std::string& text);
std::vector<double> parse_number_list(const std::string& text);

}  // namespace fkp::cli
