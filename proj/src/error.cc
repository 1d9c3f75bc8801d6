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

#include "mission_risk/error.h"

#include <utility>

namespace mission_risk {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kIntegrity: return "IntegrityError";
    case ErrorCode::kUnknownTechnique: return "UnknownTechnique";
    case ErrorCode::kUnknownCountermeasure: return "UnknownCountermeasure";
    case ErrorCode::kUnknownUnit: return "UnknownUnit";
    case ErrorCode::kDuplicateUnit: return "DuplicateUnit";
    case ErrorCode::kMixedGranularity: return "MixedGranularity";
    case ErrorCode::kCycle: return "CycleError";
    case ErrorCode::kKindMismatch: return "KindMismatch";
    case ErrorCode::kLevel: return "LevelError";
    case ErrorCode::kUnassignedCriticality: return "UnassignedCriticality";
    case ErrorCode::kMissingScore: return "MissingScore";
    case ErrorCode::kRange: return "RangeError";
    case ErrorCode::kNoCountermeasures: return "NoCountermeasures";
    case ErrorCode::kInvalidChoice: return "InvalidChoice";
    case ErrorCode::kAssessment: return "AssessmentError";
  }
  return "Error";
}

Error::Error(ErrorCode code, const std::string& message,
             std::vector<std::string> issues)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      issues_(std::move(issues)) {}

namespace {

std::string JoinCycle(const std::vector<std::string>& cycle) {
  std::string out;
  for (const auto& unit : cycle) {
    if (!out.empty()) out += " -> ";
    out += unit;
  }
  return out;
}

}  // namespace

CycleError::CycleError(std::vector<std::string> cycle)
    : Error(ErrorCode::kCycle, "control graph has a cycle: " + JoinCycle(cycle)),
      cycle_(std::move(cycle)) {}

}  // namespace mission_risk
