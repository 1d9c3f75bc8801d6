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

#ifndef MISSION_RISK_RISK_ENGINE_H_
#define MISSION_RISK_RISK_ENGINE_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mission_risk/catalog.h"
#include "mission_risk/mission_graph.h"

namespace mission_risk {

enum class Strategy { kExplicit, kAll, kGreedyMinControls };

std::string_view StrategyName(Strategy strategy);
std::optional<Strategy> ParseStrategy(std::string_view name);

struct CriticalityAssignment {
  Criticality level = Criticality::kHigh;
  std::string justification;
};

// Absolute per-axis overrides of a base score.
struct Tailoring {
  std::optional<int> likelihood;
  std::optional<int> impact;
  std::string justification;
};

struct ExplicitChoice {
  std::vector<CountermeasureId> countermeasures;
  // When absent, every control of the chosen countermeasures is selected.
  std::optional<std::vector<ControlId>> controls;
  std::string justification;
};

// The analyst's declarative inputs. Every judgement call carries a
// justification that is copied into the audit log.
struct Assessment {
  std::string mission;
  std::map<UnitId, CriticalityAssignment> criticalities;
  int adversary_tier = 1;
  std::string adversary_justification;
  std::map<TechniqueId, Tailoring> tailorings;
  Band threshold = Band::kMedium;
  std::string threshold_justification;
  Strategy strategy = Strategy::kExplicit;
  std::map<TechniqueId, ExplicitChoice> explicit_choices;
  std::map<TechniqueId, std::string> rationale_notes;
};

Assessment LoadAssessment(std::string_view text);
Assessment LoadAssessment(std::istream& in);
Assessment LoadAssessmentFile(const std::filesystem::path& path);

// Cross-document consistency problems (empty when consistent).
std::vector<std::string> CheckConsistency(const Catalog& catalog, const MissionSpec& mission,
                                          std::span<const AttackChain> chains,
                                          const Assessment& assessment);

enum class Provenance { kFromBase, kTailored };

std::string_view ProvenanceName(Provenance provenance);

struct TailoredScore {
  int likelihood = 1;
  int impact = 1;
  Provenance likelihood_from = Provenance::kFromBase;
  Provenance impact_from = Provenance::kFromBase;

  friend bool operator==(const TailoredScore&, const TailoredScore&) = default;
};

struct Placement {
  int value = 1;
  Band band = Band::kLow;

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct ScoredTechnique {
  TechniqueId id;
  UnitId impacted;
  Criticality criticality = Criticality::kHigh;
  std::optional<BaseScore> base;
  TailoredScore final;
  int matrix_value = 1;
  Band band = Band::kLow;

  friend bool operator==(const ScoredTechnique&, const ScoredTechnique&) = default;
};

struct Selection {
  std::vector<CountermeasureId> countermeasures;
  std::vector<ControlId> controls;  // sorted, unique

  friend bool operator==(const Selection&, const Selection&) = default;
};

struct AuditRecord {
  std::string step;
  std::string subject;
  std::string detail;
  std::string justification;

  friend bool operator==(const AuditRecord&, const AuditRecord&) = default;
};

struct AssessmentResult {
  std::vector<ScoredTechnique> scored;
  std::set<TechniqueId> intolerable;
  std::map<TechniqueId, Selection> selections;
  std::set<ControlId> control_union;
  // Intolerable techniques the catalog maps to no countermeasure.
  std::set<TechniqueId> unmitigable;
  std::vector<AuditRecord> audit_log;

  friend bool operator==(const AssessmentResult&, const AssessmentResult&) = default;
};

// Every (technique, impacted unit) step of the declared chains, deduplicated.
std::set<std::pair<TechniqueId, UnitId>> ApplicableTechniques(
    std::span<const AttackChain> chains);

// Direct assignment, else the nearest assigned ancestor.
// Throws kUnassignedCriticality.
Criticality CriticalityOf(const Assessment& assessment, const UnitId& unit);

// Per axis: override if present, else base. Throws kMissingScore when an
// axis has neither and kRange for overrides outside 1..5.
TailoredScore Tailor(const std::optional<BaseScore>& base, const Tailoring* tailoring);

Placement Place(const RiskMatrix& matrix, int likelihood, int impact);

// Techniques with at least one placement whose band is strictly above
// `threshold`.
std::set<TechniqueId> FilterIntolerable(std::span<const ScoredTechnique> scored,
                                        Band threshold);

// Throws kUnknownTechnique, kNoCountermeasures, kInvalidChoice.
Selection SelectMitigations(const TechniqueId& technique, const Catalog& catalog,
                            Strategy strategy,
                            const std::map<TechniqueId, ExplicitChoice>& explicit_choices);

// Runs the full pipeline. Per-technique failures are collected and thrown
// together as Error(kAssessment) whose issues() lists each of them.
AssessmentResult RunAssessment(const Catalog& catalog, const MissionSpec& mission,
                               std::span<const AttackChain> chains,
                               const Assessment& assessment);

}  // namespace mission_risk

#endif  // MISSION_RISK_RISK_ENGINE_H_
