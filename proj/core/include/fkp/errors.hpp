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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fkp {

/// A state, word or parameter lies outside the space it is used with.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The caller violated an operation precondition (lengths, empty inputs, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap (net size, automaton states, enumeration) was hit.
/// `reached` carries how far the computation got before stopping, in the
/// unit of the operation that threw (net points, depth, sequences).
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t reached)
      : std::runtime_error(what), reached_(reached) {}

  std::size_t reached() const noexcept { return reached_; }

 private:
  std::size_t reached_;
};

/// An iterative method stopped without meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : std::runtime_error(what), previous_(previous), last_(last) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

}  // namespace fkp
