// Copyright 2026 The PDPCD Solver Authors
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

#ifndef PDPCD_TOOLS_CLI_H_
#define PDPCD_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace pdpcd::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kUsageError = 2,
  kFileError = 3,
  kInfeasible = 4,
  kNoSolution = 5,
  kValidationFailed = 6,
};

// Runs the command line `args` (without the program name).
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace pdpcd::cli

#endif  // PDPCD_TOOLS_CLI_H_
