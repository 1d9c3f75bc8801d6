// Copyright 2026 The mission-risk Authors
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

#ifndef MISSION_RISK_TOOLS_CLI_H_
#define MISSION_RISK_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace mission_risk::cli {

// Process exit statuses. Stable; scripts depend on them.
enum ExitStatus : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitValidation = 2,
  kExitFindings = 3,
};

struct Console {
  std::ostream& out;
  std::ostream& err;
  bool color = false;
};

// `args` excludes the program name.
int Run(const std::vector<std::string>& args, Console console);

}  // namespace mission_risk::cli

#endif  // MISSION_RISK_TOOLS_CLI_H_
