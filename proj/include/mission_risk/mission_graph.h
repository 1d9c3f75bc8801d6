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

#ifndef MISSION_RISK_MISSION_GRAPH_H_
#define MISSION_RISK_MISSION_GRAPH_H_

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mission_risk/catalog.h"

namespace mission_risk {

enum class Segment { kSpace, kGround, kUser, kLink };

std::string_view SegmentName(Segment segment);
std::optional<Segment> ParseSegment(std::string_view name);

// Granularity, finest first.
enum class Level { kModule, kComponent, kSegment };

std::string_view LevelName(Level level);
std::optional<Level> ParseLevel(std::string_view name);

// Canonical "segment[/component[/module]]" path of a space-system unit.
class UnitId {
 public:
  // Throws Error(kSchema) on a malformed path or unknown segment.
  static UnitId Parse(std::string_view path);
  static std::optional<UnitId> TryParse(std::string_view path);

  const std::string& str() const { return path_; }
  Level level() const;
  Segment segment() const { return segment_; }
  std::string component() const;
  std::string module() const;

  // The enclosing unit at `level`; identity when level == this->level().
  // Throws Error(kLevel) if `level` is finer than this unit.
  UnitId ancestor(Level level) const;

  friend bool operator==(const UnitId&, const UnitId&) = default;
  friend auto operator<=>(const UnitId& a, const UnitId& b) {
    return a.path_ <=> b.path_;
  }

 private:
  UnitId(Segment segment, std::string path)
      : segment_(segment), path_(std::move(path)) {}

  Segment segment_;
  std::string path_;
};

struct Unit {
  UnitId id;
  std::string label;

  friend bool operator==(const Unit&, const Unit&) = default;
};

// Unit inventory of a mission specification. The four segments are always
// present.
class Inventory {
 public:
  Inventory();

  // Throws Error(kIntegrity) on a duplicate id or a module whose component
  // is not declared.
  void Add(Unit unit);

  bool contains(const UnitId& id) const { return units_.contains(id); }
  const Unit* find(const UnitId& id) const;
  const std::map<UnitId, Unit>& units() const { return units_; }

 private:
  std::map<UnitId, Unit> units_;
};

enum class FlowKind { kControl, kData };

std::string_view FlowKindName(FlowKind kind);

using Arc = std::pair<UnitId, UnitId>;

// A directed line graph: consecutive units are joined by an arc.
struct Flow {
  FlowKind kind = FlowKind::kControl;
  std::string label;
  std::vector<UnitId> units;

  std::vector<Arc> arcs() const;
};

struct FlowGraph {
  FlowKind kind = FlowKind::kControl;
  std::set<UnitId> nodes;
  std::set<Arc> arcs;

  friend bool operator==(const FlowGraph&, const FlowGraph&) = default;
};

struct MissionArc {
  UnitId from;
  UnitId to;
  FlowKind kind = FlowKind::kControl;

  friend bool operator==(const MissionArc&, const MissionArc&) = default;
  friend auto operator<=>(const MissionArc&, const MissionArc&) = default;
};

struct MissionGraph {
  std::set<UnitId> nodes;
  std::set<MissionArc> arcs;

  // Arcs of one kind, with the nodes they touch.
  FlowGraph arcs_of(FlowKind kind) const;

  friend bool operator==(const MissionGraph&, const MissionGraph&) = default;
};

struct ChainStep {
  TechniqueId technique;
  UnitId impacted;

  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

struct AttackChain {
  std::string objective;
  std::string justification;
  std::vector<ChainStep> steps;
};

struct AttackFlow {
  std::string label;
  std::vector<UnitId> units;
};

struct OverlayReport {
  std::vector<ChainStep> on_mission;
  std::vector<ChainStep> off_mission;
};

// Throws kDuplicateUnit, kMixedGranularity, or kSchema for an empty list.
Flow MakeFlow(FlowKind kind, std::vector<UnitId> units, std::string label = {});

// Set union of the flows. Control graphs are checked for cycles (CycleError).
// Throws kKindMismatch if a flow has a different kind.
FlowGraph UnionFlows(FlowKind kind, std::span<const Flow> flows);

// Nodes with in-degree zero, nodes with out-degree zero.
std::pair<std::set<UnitId>, std::set<UnitId>> SourcesAndSinks(const FlowGraph& graph);

// One directed cycle as a closed path, or nullopt for a DAG.
std::optional<std::vector<UnitId>> FindCycle(const std::set<UnitId>& nodes,
                                             const std::set<Arc>& arcs);

MissionGraph BuildMission(const FlowGraph& control, const FlowGraph& data);

// Collapse every node to its ancestor at `level`. Self-arcs created by the
// collapse are dropped. Control arcs are re-checked for cycles.
FlowGraph Project(const FlowGraph& graph, Level level);
MissionGraph Project(const MissionGraph& graph, Level level);

// Throws kUnknownUnit if a step names a unit missing from `inventory`.
OverlayReport OverlayChain(const MissionGraph& mission, const AttackChain& chain,
                           const Inventory& inventory);

// A mission specification document: inventory, flows and attack overlays.
struct MissionSpec {
  std::string name;
  std::string description;
  Inventory inventory;
  std::vector<Flow> control_flows;
  std::vector<Flow> data_flows;
  std::vector<AttackChain> attack_chains;
  std::vector<AttackFlow> attack_flows;

  MissionGraph graph() const;
};

MissionSpec LoadMission(std::string_view text);
MissionSpec LoadMission(std::istream& in);
MissionSpec LoadMissionFile(const std::filesystem::path& path);

}  // namespace mission_risk

#endif  // MISSION_RISK_MISSION_GRAPH_H_
