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

// Built-in invariant suites run by the verify route.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fkp::cli {

struct CheckResult {
  std::string suite;
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::string detail;

  bool passed() const { return failures == 0; }
};

/// Suite names accepted by run_suite, in execution order.
const std::vector<std::string>& suite_names();

/// Runs one suite ("all" runs every suite). All sampling uses one generator
/// seeded with `seed`.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed);

}  // namespace fkp::cli
