// Copyright 2026 The skillsim Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace skillsim::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitPlan = 1,       // unsolvable goal, grounding or selection failure
  kExitExecution = 2,  // the tree finished with Failure or ran out of time
  kExitInput = 3,      // I/O, parse and usage errors
};

// Overrides the default artifact directory ("skillsim_runs"); --out wins over it.
inline constexpr char kLogDirEnv[] = "SKILLSIM_LOG_DIR";

// Entry point of the skillsim tool; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skillsim::app
