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

// Command-line front end: subcommands, flag-to-key mapping and exit codes.

#pragma once

#include <iosfwd>

namespace fkp::cli {

/// Parses arguments, runs the selected route and returns the exit status
/// (0 success, 1 usage or config, 2 resource cap, 3 invariant failure).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fkp::cli
