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

#ifndef MISSION_RISK_REPORTING_H_
#define MISSION_RISK_REPORTING_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mission_risk/catalog.h"
#include "mission_risk/mission_graph.h"
#include "mission_risk/risk_engine.h"

namespace mission_risk {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Band fill colors and flow styles, chosen from the Okabe-Ito palette so
// the three bands stay distinguishable under common color-vision deficiencies.
struct Palette {
  std::string_view low = "#56B4E9";
  std::string_view medium = "#F0E442";
  std::string_view high = "#D55E00";
  std::string_view control_arc = "#0072B2";
  std::string_view data_arc = "#56B4E9";
  std::string_view attack_arc = "#D55E00";
  std::string_view technique_outline = "#CC79A7";

  std::string_view band(Band b) const {
    return b == Band::kLow ? low : b == Band::kMedium ? medium : high;
  }
};

inline constexpr Palette kPalette{};

struct MatrixCell {
  int value = 1;
  Band band = Band::kLow;
  std::vector<std::string> techniques;  // sorted, unique
};

// grid[likelihood - 1][impact - 1].
struct MatrixRender {
  std::array<std::array<MatrixCell, RiskMatrix::kSize>, RiskMatrix::kSize> grid;
};

MatrixRender BuildMatrixRender(std::span<const ScoredTechnique> scored,
                               const RiskMatrix& matrix);

enum class MatrixFormat { kText, kSvg };

std::string RenderMatrix(std::span<const ScoredTechnique> scored, const RiskMatrix& matrix,
                         MatrixFormat format);

// DOT digraph of the mission with attack overlays. Units are clustered by
// segment then component. Throws kUnknownUnit for overlay units missing
// from `inventory`.
std::string ExportDot(const MissionGraph& mission, std::span<const AttackChain> chains,
                      std::span<const AttackFlow> flows, const Inventory& inventory);

struct InputRef {
  std::string name;
  std::string sha256;

  friend bool operator==(const InputRef&, const InputRef&) = default;
};

struct ReportMetadata {
  std::string tool_version{kToolVersion};
  std::optional<std::string> timestamp;
  InputRef catalog;
  InputRef mission;
  InputRef assessment;
  int adversary_tier = 1;
  Band threshold = Band::kMedium;
  Strategy strategy = Strategy::kExplicit;

  friend bool operator==(const ReportMetadata&, const ReportMetadata&) = default;
};

struct Report {
  ReportMetadata metadata;
  RiskMatrix matrix = RiskMatrix::Default();
  AssessmentResult result;

  friend bool operator==(const Report&, const Report&) = default;
};

enum class ReportFormat { kStructured, kMarkdown };

std::string EmitReport(const Report& report, ReportFormat format);

// Inverse of EmitReport(kStructured). Throws kSchema on malformed input.
Report ParseReport(std::string_view text);

std::string Sha256Hex(std::string_view bytes);

}  // namespace mission_risk

#endif  // MISSION_RISK_REPORTING_H_
