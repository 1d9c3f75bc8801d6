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

#include "mission_risk/mission_graph.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "json_reader.h"
#include "mission_risk/error.h"

namespace mission_risk {

using internal::AsArray;
using internal::AsText;
using internal::ChildPath;
using internal::Json;
using internal::ObjectReader;

std::string_view SegmentName(Segment segment) {
  switch (segment) {
    case Segment::kSpace: return "space";
    case Segment::kGround: return "ground";
    case Segment::kUser: return "user";
    case Segment::kLink: return "link";
  }
  return "space";
}

std::optional<Segment> ParseSegment(std::string_view name) {
  if (name == "space") return Segment::kSpace;
  if (name == "ground") return Segment::kGround;
  if (name == "user") return Segment::kUser;
  if (name == "link") return Segment::kLink;
  return std::nullopt;
}

std::string_view LevelName(Level level) {
  switch (level) {
    case Level::kModule: return "module";
    case Level::kComponent: return "component";
    case Level::kSegment: return "segment";
  }
  return "module";
}

std::optional<Level> ParseLevel(std::string_view name) {
  if (name == "module") return Level::kModule;
  if (name == "component") return Level::kComponent;
  if (name == "segment") return Level::kSegment;
  return std::nullopt;
}

std::string_view FlowKindName(FlowKind kind) {
  return kind == FlowKind::kControl ? "control" : "data";
}

// ---------------------------------------------------------------------------
// UnitId

namespace {

std::vector<std::string> SplitPath(std::string_view path) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    const auto slash = path.find('/', start);
    parts.emplace_back(path.substr(start, slash - start));
    if (slash == std::string_view::npos) break;
    start = slash + 1;
  }
  return parts;
}

bool IsPathPart(const std::string& part) {
  return !part.empty() && std::all_of(part.begin(), part.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
  });
}

}  // namespace

std::optional<UnitId> UnitId::TryParse(std::string_view path) {
  const auto parts = SplitPath(path);
  if (parts.size() > 3) return std::nullopt;
  if (!std::all_of(parts.begin(), parts.end(), IsPathPart)) return std::nullopt;
  const auto segment = ParseSegment(parts.front());
  if (!segment) return std::nullopt;
  return UnitId(*segment, std::string(path));
}

UnitId UnitId::Parse(std::string_view path) {
  auto id = TryParse(path);
  if (!id) {
    throw Error(ErrorCode::kSchema,
                "'" + std::string(path) + "' is not a segment[/component[/module]] unit path");
  }
  return *std::move(id);
}

Level UnitId::level() const {
  const auto slashes = std::count(path_.begin(), path_.end(), '/');
  return slashes == 0 ? Level::kSegment : slashes == 1 ? Level::kComponent : Level::kModule;
}

std::string UnitId::component() const {
  const auto parts = SplitPath(path_);
  return parts.size() > 1 ? parts[1] : std::string();
}

std::string UnitId::module() const {
  const auto parts = SplitPath(path_);
  return parts.size() > 2 ? parts[2] : std::string();
}

UnitId UnitId::ancestor(Level target) const {
  if (target < level()) {
    throw Error(ErrorCode::kLevel, "cannot refine " + path_ + " to " +
                                       std::string(LevelName(target)) + " level");
  }
  std::string path = path_;
  for (int up = static_cast<int>(target) - static_cast<int>(level()); up > 0; --up) {
    path.erase(path.rfind('/'));
  }
  return UnitId(segment_, std::move(path));
}

// ---------------------------------------------------------------------------
// Inventory

Inventory::Inventory() {
  for (auto segment : {Segment::kSpace, Segment::kGround, Segment::kUser, Segment::kLink}) {
    auto id = UnitId::Parse(SegmentName(segment));
    units_.emplace(id, Unit{id, std::string(SegmentName(segment))});
  }
}

void Inventory::Add(Unit unit) {
  if (unit.id.level() == Level::kModule &&
      !units_.contains(unit.id.ancestor(Level::kComponent))) {
    throw Error(ErrorCode::kIntegrity, "module " + unit.id.str() + " names undeclared component " +
                                           unit.id.ancestor(Level::kComponent).str());
  }
  const auto id = unit.id;
  if (!units_.emplace(id, std::move(unit)).second) {
    throw Error(ErrorCode::kIntegrity, "duplicate unit id " + id.str());
  }
}

const Unit* Inventory::find(const UnitId& id) const {
  const auto it = units_.find(id);
  return it == units_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Flows and graphs

std::vector<Arc> Flow::arcs() const {
  std::vector<Arc> out;
  for (size_t k = 0; k + 1 < units.size(); ++k) out.emplace_back(units[k], units[k + 1]);
  return out;
}

Flow MakeFlow(FlowKind kind, std::vector<UnitId> units, std::string label) {
  if (units.empty()) throw Error(ErrorCode::kSchema, "flow '" + label + "' has no units");
  std::set<UnitId> seen;
  for (const auto& unit : units) {
    if (!seen.insert(unit).second) {
      throw Error(ErrorCode::kDuplicateUnit,
                  "flow '" + label + "' visits " + unit.str() + " more than once");
    }
    if (unit.level() != units.front().level()) {
      throw Error(ErrorCode::kMixedGranularity,
                  "flow '" + label + "' mixes " + std::string(LevelName(units.front().level())) +
                      " and " + std::string(LevelName(unit.level())) + " units");
    }
  }
  return Flow{kind, std::move(label), std::move(units)};
}

std::optional<std::vector<UnitId>> FindCycle(const std::set<UnitId>& nodes,
                                             const std::set<Arc>& arcs) {
  std::map<UnitId, std::vector<UnitId>> out;
  for (const auto& [from, to] : arcs) out[from].push_back(to);

  enum class Mark { kNew, kActive, kDone };
  std::map<UnitId, Mark> mark;
  for (const auto& n : nodes) mark[n] = Mark::kNew;
  std::vector<UnitId> stack;
  std::optional<std::vector<UnitId>> cycle;

  std::function<bool(const UnitId&)> visit = [&](const UnitId& u) {
    mark[u] = Mark::kActive;
    stack.push_back(u);
    for (const auto& v : out[u]) {
      if (mark[v] == Mark::kActive) {
        const auto start = std::find(stack.begin(), stack.end(), v);
        cycle.emplace(start, stack.end());
        cycle->push_back(v);
        return true;
      }
      if (mark[v] == Mark::kNew && visit(v)) return true;
    }
    stack.pop_back();
    mark[u] = Mark::kDone;
    return false;
  };
  for (const auto& n : nodes) {
    if (mark[n] == Mark::kNew && visit(n)) return cycle;
  }
  return std::nullopt;
}

namespace {

void RequireAcyclic(const std::set<UnitId>& nodes, const std::set<Arc>& arcs) {
  if (auto cycle = FindCycle(nodes, arcs)) {
    std::vector<std::string> path;
    for (const auto& u : *cycle) path.push_back(u.str());
    throw CycleError(std::move(path));
  }
}

}  // namespace

FlowGraph UnionFlows(FlowKind kind, std::span<const Flow> flows) {
  FlowGraph graph{kind, {}, {}};
  for (const auto& flow : flows) {
    if (flow.kind != kind) {
      throw Error(ErrorCode::kKindMismatch, "flow '" + flow.label + "' is a " +
                                                std::string(FlowKindName(flow.kind)) +
                                                " flow, expected " +
                                                std::string(FlowKindName(kind)));
    }
    graph.nodes.insert(flow.units.begin(), flow.units.end());
    for (auto& arc : flow.arcs()) graph.arcs.insert(std::move(arc));
  }
  if (kind == FlowKind::kControl) RequireAcyclic(graph.nodes, graph.arcs);
  return graph;
}

std::pair<std::set<UnitId>, std::set<UnitId>> SourcesAndSinks(const FlowGraph& graph) {
  std::set<UnitId> sources = graph.nodes;
  std::set<UnitId> sinks = graph.nodes;
  for (const auto& [from, to] : graph.arcs) {
    sources.erase(to);
    sinks.erase(from);
  }
  return {std::move(sources), std::move(sinks)};
}

FlowGraph MissionGraph::arcs_of(FlowKind kind) const {
  FlowGraph graph{kind, {}, {}};
  for (const auto& arc : arcs) {
    if (arc.kind != kind) continue;
    graph.nodes.insert(arc.from);
    graph.nodes.insert(arc.to);
    graph.arcs.emplace(arc.from, arc.to);
  }
  return graph;
}

MissionGraph BuildMission(const FlowGraph& control, const FlowGraph& data) {
  if (control.kind != FlowKind::kControl || data.kind != FlowKind::kData) {
    throw Error(ErrorCode::kKindMismatch,
                "a mission is built from a control flow graph and a data flow graph");
  }
  MissionGraph mission;
  mission.nodes = control.nodes;
  mission.nodes.insert(data.nodes.begin(), data.nodes.end());
  for (const auto& [from, to] : control.arcs) mission.arcs.insert({from, to, FlowKind::kControl});
  for (const auto& [from, to] : data.arcs) mission.arcs.insert({from, to, FlowKind::kData});
  return mission;
}

FlowGraph Project(const FlowGraph& graph, Level level) {
  FlowGraph out{graph.kind, {}, {}};
  for (const auto& node : graph.nodes) out.nodes.insert(node.ancestor(level));
  for (const auto& [from, to] : graph.arcs) {
    auto a = from.ancestor(level);
    auto b = to.ancestor(level);
    if (a != b) out.arcs.emplace(std::move(a), std::move(b));
  }
  if (out.kind == FlowKind::kControl) RequireAcyclic(out.nodes, out.arcs);
  return out;
}

MissionGraph Project(const MissionGraph& graph, Level level) {
  MissionGraph out;
  for (const auto& node : graph.nodes) out.nodes.insert(node.ancestor(level));
  for (const auto& arc : graph.arcs) {
    auto a = arc.from.ancestor(level);
    auto b = arc.to.ancestor(level);
    if (a != b) out.arcs.insert({std::move(a), std::move(b), arc.kind});
  }
  const auto control = out.arcs_of(FlowKind::kControl);
  RequireAcyclic(control.nodes, control.arcs);
  return out;
}

OverlayReport OverlayChain(const MissionGraph& mission, const AttackChain& chain,
                           const Inventory& inventory) {
  OverlayReport report;
  for (const auto& step : chain.steps) {
    if (!inventory.contains(step.impacted)) {
      throw Error(ErrorCode::kUnknownUnit, "attack chain '" + chain.objective +
                                               "' impacts unknown unit " + step.impacted.str());
    }
    (mission.nodes.contains(step.impacted) ? report.on_mission : report.off_mission)
        .push_back(step);
  }
  return report;
}

MissionGraph MissionSpec::graph() const {
  return BuildMission(UnionFlows(FlowKind::kControl, control_flows),
                      UnionFlows(FlowKind::kData, data_flows));
}

// ---------------------------------------------------------------------------
// Loading

namespace {

UnitId ReadUnitRef(const Json& node, const std::string& path, const Inventory& inventory) {
  const auto& text = AsText(node, path);
  auto id = UnitId::TryParse(text);
  if (!id) internal::SchemaFail(path, "malformed unit path '" + text + "'");
  if (!inventory.contains(*id)) {
    throw Error(ErrorCode::kUnknownUnit, path + ": unit " + text + " is not in the inventory");
  }
  return *std::move(id);
}

std::vector<UnitId> ReadUnitList(const Json& node, const std::string& path,
                                 const Inventory& inventory) {
  std::vector<UnitId> units;
  const auto& list = AsArray(node, path);
  for (size_t k = 0; k < list.size(); ++k) {
    units.push_back(ReadUnitRef(list[k], ChildPath(path, k), inventory));
  }
  return units;
}

std::vector<Flow> ReadFlows(ObjectReader& root, std::string_view key, FlowKind kind,
                            const Inventory& inventory) {
  std::vector<Flow> flows;
  const auto path = root.PathOf(key);
  const auto& list = AsArray(root.Required(key), path);
  for (size_t k = 0; k < list.size(); ++k) {
    ObjectReader r(list[k], ChildPath(path, k));
    auto label = r.RequiredText("label");
    auto units = ReadUnitList(r.Required("units"), r.PathOf("units"), inventory);
    r.Finish();
    flows.push_back(MakeFlow(kind, std::move(units), std::move(label)));
  }
  return flows;
}

MissionSpec ReadMission(const Json& doc) {
  ObjectReader root(doc, "");
  internal::RequireSchemaVersion(root);
  MissionSpec spec;
  spec.name = root.RequiredText("name");
  spec.description = root.OptionalString("description");

  {
    const auto path = root.PathOf("units");
    const auto& list = AsArray(root.Required("units"), path);
    for (size_t k = 0; k < list.size(); ++k) {
      ObjectReader r(list[k], ChildPath(path, k));
      const auto text = r.RequiredText("id");
      auto id = UnitId::TryParse(text);
      if (!id) internal::SchemaFail(r.PathOf("id"), "malformed unit path '" + text + "'");
      auto label = r.OptionalString("label");
      r.Finish();
      if (id->level() == Level::kSegment) {
        internal::SchemaFail(r.PathOf("id"), "segments are implicit and cannot be declared");
      }
      spec.inventory.Add(Unit{*id, label.empty() ? text : label});
    }
  }
  spec.control_flows = ReadFlows(root, "control_flows", FlowKind::kControl, spec.inventory);
  spec.data_flows = ReadFlows(root, "data_flows", FlowKind::kData, spec.inventory);

  if (const Json* node = root.Optional("attack_chains")) {
    const auto path = root.PathOf("attack_chains");
    const auto& list = AsArray(*node, path);
    for (size_t k = 0; k < list.size(); ++k) {
      ObjectReader r(list[k], ChildPath(path, k));
      AttackChain chain{r.RequiredText("objective"), r.RequiredText("justification"), {}};
      const auto steps_path = r.PathOf("steps");
      const auto& steps = AsArray(r.Required("steps"), steps_path);
      if (steps.empty()) internal::SchemaFail(steps_path, "an attack chain needs at least one step");
      for (size_t s = 0; s < steps.size(); ++s) {
        ObjectReader sr(steps[s], ChildPath(steps_path, s));
        const auto tech_text = sr.RequiredText("technique");
        auto tech = TechniqueId::TryParse(tech_text);
        if (!tech) internal::SchemaFail(sr.PathOf("technique"), "malformed technique id '" + tech_text + "'");
        auto unit = ReadUnitRef(sr.Required("impacted"), sr.PathOf("impacted"), spec.inventory);
        sr.Finish();
        chain.steps.push_back({*std::move(tech), std::move(unit)});
      }
      r.Finish();
      spec.attack_chains.push_back(std::move(chain));
    }
  }
  if (const Json* node = root.Optional("attack_flows")) {
    const auto path = root.PathOf("attack_flows");
    const auto& list = AsArray(*node, path);
    for (size_t k = 0; k < list.size(); ++k) {
      ObjectReader r(list[k], ChildPath(path, k));
      auto label = r.RequiredText("label");
      auto units = ReadUnitList(r.Required("units"), r.PathOf("units"), spec.inventory);
      r.Finish();
      if (units.empty()) internal::SchemaFail(r.path(), "an attack flow needs at least one unit");
      std::set<UnitId> seen;
      for (const auto& u : units) {
        if (!seen.insert(u).second) {
          throw Error(ErrorCode::kDuplicateUnit,
                      "attack flow '" + label + "' visits " + u.str() + " more than once");
        }
      }
      spec.attack_flows.push_back({std::move(label), std::move(units)});
    }
  }
  root.Finish();
  // Surfaces control cycles at load time.
  (void)spec.graph();
  return spec;
}

}  // namespace

MissionSpec LoadMission(std::string_view text) {
  return ReadMission(internal::ParseDocument(text, "mission specification"));
}

MissionSpec LoadMission(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return LoadMission(buffer.str());
}

MissionSpec LoadMissionFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read mission specification " + path.string());
  return LoadMission(in);
}

}  // namespace mission_risk
