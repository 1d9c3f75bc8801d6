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

#ifndef MISSION_RISK_ERROR_H_
#define MISSION_RISK_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mission_risk {

enum class ErrorCode {
  kIo,
  kSchema,
  kIntegrity,
  kUnknownTechnique,
  kUnknownCountermeasure,
  kUnknownUnit,
  kDuplicateUnit,
  kMixedGranularity,
  kCycle,
  kKindMismatch,
  kLevel,
  kUnassignedCriticality,
  kMissingScore,
  kRange,
  kNoCountermeasures,
  kInvalidChoice,
  kAssessment,
};

std::string_view ErrorCodeName(ErrorCode code);

// Base for every error raised by the library. `issues` carries the
// individual findings when one error aggregates several of them.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::string> issues = {});

  ErrorCode code() const { return code_; }
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  ErrorCode code_;
  std::vector<std::string> issues_;
};

// Raised when a Control-kind graph contains a cycle. `cycle` is a closed
// unit path, first element repeated at the end.
class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::string> cycle);

  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

}  // namespace mission_risk

#endif  // MISSION_RISK_ERROR_H_
