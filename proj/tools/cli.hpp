// Copyright 2026 The sketchkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sketchkit::cli {

enum ExitCode : int {
  kOk = 0,
  kFindings = 1,  // violations, incompatibilities, rejected rules
  kUsage = 2,     // bad flags or unreadable/unwritable files
  kInvalid = 3,   // parse or well-formedness errors
};

/// Runs the command line `args` (without the program name). Regular output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sketchkit::cli
