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

// Shared fixtures, random generators and brute-force oracles for the unit,
// property and acceptance suites. The oracles deliberately avoid the
// library's own graph and selection code.
#ifndef MISSION_RISK_TESTS_SUPPORT_H_
#define MISSION_RISK_TESTS_SUPPORT_H_

#include <algorithm>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mission_risk/catalog.h"
#include "mission_risk/mission_graph.h"
#include "mission_risk/risk_engine.h"

namespace mission_risk::testing {

inline std::filesystem::path SourceDir() { return MISSION_RISK_SOURCE_DIR; }
inline std::filesystem::path TerraDir() { return SourceDir() / "data" / "terra"; }
inline std::filesystem::path CliBinary() { return MISSION_RISK_CLI_BINARY; }

inline std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Terra {
  Catalog catalog;
  MissionSpec mission;
  Assessment assessment;
};

inline Terra LoadTerra() {
  return {LoadCatalogFile(TerraDir() / "catalog.json"),
          LoadMissionFile(TerraDir() / "mission.json"),
          LoadAssessmentFile(TerraDir() / "assessment.json")};
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("mission-risk-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// ---------------------------------------------------------------------------
// Graph generators and oracles

// Module-level units: every segment gets `components` components with
// `modules` modules each. The returned order is a fixed total order whose
// forward arcs never close a cycle, even after collapsing to coarser levels.
inline std::vector<UnitId> ModuleUniverse(int components, int modules) {
  std::vector<UnitId> out;
  for (const char* seg : {"space", "ground", "link", "user"}) {
    for (int c = 0; c < components; ++c) {
      for (int m = 0; m < modules; ++m) {
        out.push_back(UnitId::Parse(std::string(seg) + "/c" + std::to_string(c) + "/m" +
                                    std::to_string(m)));
      }
    }
  }
  return out;
}

inline Inventory InventoryFor(const std::vector<UnitId>& modules) {
  Inventory inventory;
  for (const auto& m : modules) {
    const auto component = m.ancestor(Level::kComponent);
    if (!inventory.contains(component)) inventory.Add({component, ""});
    inventory.Add({m, ""});
  }
  return inventory;
}

// A random line graph over distinct units. With `forward`, units follow
// their order in `universe`, so any union of such flows is acyclic.
inline Flow RandomFlow(std::mt19937& rng, const std::vector<UnitId>& universe, FlowKind kind,
                       bool forward, int max_length = 5) {
  std::uniform_int_distribution<int> length(1, max_length);
  std::vector<size_t> picks(universe.size());
  for (size_t k = 0; k < picks.size(); ++k) picks[k] = k;
  std::shuffle(picks.begin(), picks.end(), rng);
  picks.resize(std::min<size_t>(picks.size(), length(rng)));
  if (forward) std::sort(picks.begin(), picks.end());
  std::vector<UnitId> units;
  for (size_t k : picks) units.push_back(universe[k]);
  return MakeFlow(kind, std::move(units));
}

inline std::vector<Flow> RandomFlowSet(std::mt19937& rng, const std::vector<UnitId>& universe,
                                       FlowKind kind, bool forward, int max_flows = 6) {
  std::uniform_int_distribution<int> count(1, max_flows);
  std::vector<Flow> flows;
  for (int n = count(rng); n > 0; --n) flows.push_back(RandomFlow(rng, universe, kind, forward));
  return flows;
}

inline FlowGraph GraphUnion(const FlowGraph& a, const FlowGraph& b) {
  FlowGraph out{a.kind, a.nodes, a.arcs};
  out.nodes.insert(b.nodes.begin(), b.nodes.end());
  out.arcs.insert(b.arcs.begin(), b.arcs.end());
  return out;
}

// Nodes reachable from `from` (inclusive) by breadth-first search.
inline std::set<UnitId> Reachable(const std::set<Arc>& arcs, const UnitId& from) {
  std::multimap<UnitId, UnitId> next;
  for (const auto& [u, v] : arcs) next.emplace(u, v);
  std::set<UnitId> seen{from};
  std::deque<UnitId> queue{from};
  while (!queue.empty()) {
    const UnitId u = queue.front();
    queue.pop_front();
    auto [lo, hi] = next.equal_range(u);
    for (auto it = lo; it != hi; ++it) {
      if (seen.insert(it->second).second) queue.push_back(it->second);
    }
  }
  return seen;
}

// Collapse by string prefix, independent of UnitId::ancestor.
inline std::string CollapsePath(const std::string& path, Level level) {
  const int keep = level == Level::kSegment ? 1 : level == Level::kComponent ? 2 : 3;
  std::string out;
  int parts = 0;
  for (char c : path) {
    if (c == '/' && ++parts == keep) break;
    out += c;
  }
  return out;
}

inline FlowGraph BruteCollapse(const FlowGraph& graph, Level level) {
  FlowGraph out;
  out.kind = graph.kind;
  for (const auto& n : graph.nodes) out.nodes.insert(UnitId::Parse(CollapsePath(n.str(), level)));
  for (const auto& [u, v] : graph.arcs) {
    auto a = UnitId::Parse(CollapsePath(u.str(), level));
    auto b = UnitId::Parse(CollapsePath(v.str(), level));
    if (a != b) out.arcs.emplace(std::move(a), std::move(b));
  }
  return out;
}

// True when `cycle` is a closed walk over arcs of the graph.
inline bool IsClosedWalk(const std::vector<std::string>& cycle, const std::set<Arc>& arcs) {
  if (cycle.size() < 2 || cycle.front() != cycle.back()) return false;
  for (size_t k = 0; k + 1 < cycle.size(); ++k) {
    if (!arcs.contains({UnitId::Parse(cycle[k]), UnitId::Parse(cycle[k + 1])})) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Catalog generators and oracles

// One technique "T1000" mapped to up to `max_cms` countermeasures drawing
// from a pool of `pool` controls.
inline Catalog RandomToyCatalog(std::mt19937& rng, int max_cms = 10, int max_controls = 8,
                                int pool = 16) {
  Catalog catalog;
  for (int k = 1; k <= pool; ++k) {
    const std::string id = "SC-" + std::to_string(k);
    catalog.controls[id] = {id, "SC", "control " + std::to_string(k)};
  }
  std::uniform_int_distribution<int> cm_count(1, max_cms);
  std::uniform_int_distribution<int> control_count(1, max_controls);
  std::uniform_int_distribution<int> control_pick(1, pool);
  Technique technique{TechniqueId::Parse("T1000"), "toy", "toy", {}, ""};
  for (int c = cm_count(rng); c > 0; --c) {
    char id[16];
    std::snprintf(id, sizeof id, "CM%04d", static_cast<int>(technique.countermeasures.size()) + 1);
    Countermeasure cm{id, "toy", {}, ""};
    std::set<std::string> chosen;
    for (int n = control_count(rng); static_cast<int>(chosen.size()) < n;) {
      chosen.insert("SC-" + std::to_string(control_pick(rng)));
    }
    // Mappings may list a control twice; resolution must deduplicate.
    cm.controls.assign(chosen.begin(), chosen.end());
    if (rng() % 4 == 0) cm.controls.push_back(cm.controls.front());
    technique.countermeasures.push_back(cm.id);
    catalog.countermeasures[cm.id] = std::move(cm);
  }
  catalog.techniques.insert_or_assign(technique.id, std::move(technique));
  return catalog;
}

// Smallest distinct-control count over every non-empty subset of the
// technique's countermeasures.
inline size_t BruteForceMinControls(const Catalog& catalog, const TechniqueId& technique) {
  const auto& cms = catalog.techniques.at(technique).countermeasures;
  size_t best = SIZE_MAX;
  for (unsigned mask = 1; mask < (1u << cms.size()); ++mask) {
    std::set<std::string> controls;
    for (size_t k = 0; k < cms.size(); ++k) {
      if (mask & (1u << k)) {
        const auto& list = catalog.countermeasures.at(cms[k]).controls;
        controls.insert(list.begin(), list.end());
      }
    }
    best = std::min(best, controls.size());
  }
  return best;
}

// A small random mission with chains and an assessment whose strategy
// is All. Criticalities are assigned per segment.
struct RandomCase {
  Catalog catalog;
  MissionSpec mission;
  Assessment assessment;
};

inline RandomCase RandomAssessmentCase(std::mt19937& rng) {
  RandomCase rc;
  const auto universe = ModuleUniverse(2, 2);
  rc.mission.name = "random";
  rc.mission.inventory = InventoryFor(universe);
  rc.mission.control_flows = RandomFlowSet(rng, universe, FlowKind::kControl, true, 3);
  rc.mission.data_flows = RandomFlowSet(rng, universe, FlowKind::kData, false, 3);

  std::uniform_int_distribution<int> axis(1, 5);
  std::uniform_int_distribution<int> technique_count(1, 8);
  const int n = technique_count(rng);
  const Criticality levels[] = {Criticality::kLow, Criticality::kMedium, Criticality::kHigh};
  rc.catalog.controls["SI-4"] = {"SI-4", "SI", "System Monitoring"};
  rc.catalog.countermeasures["CM0001"] = {"CM0001", "monitor", {"SI-4"}, ""};
  AttackChain chain{"random objective", "generated", {}};
  for (int k = 0; k < n; ++k) {
    const auto id = TechniqueId::Parse("T" + std::to_string(1100 + k));
    rc.catalog.techniques.insert_or_assign(id, Technique{id, "technique", "tactic", {"CM0001"}, ""});
    for (auto level : levels) {
      if (rng() % 3 != 0) rc.catalog.base_scores.insert_or_assign({id, level}, BaseScoreEntry{{axis(rng), axis(rng)}, ""});
    }
    // Tailor both axes so every technique is scorable whatever its base.
    if (rng() % 2 == 0) {
      rc.assessment.tailorings.insert_or_assign(id, Tailoring{axis(rng), axis(rng), "generated"});
    } else {
      bool all = true;
      for (auto level : levels) all = all && rc.catalog.base_scores.contains({id, level});
      if (!all) rc.assessment.tailorings.insert_or_assign(id, Tailoring{axis(rng), axis(rng), "generated"});
    }
    const int steps = 1 + static_cast<int>(rng() % 2);
    for (int s = 0; s < steps; ++s) {
      chain.steps.push_back({id, universe[rng() % universe.size()]});
    }
  }
  rc.mission.attack_chains.push_back(chain);

  rc.assessment.mission = "random";
  for (const char* seg : {"space", "ground", "link", "user"}) {
    rc.assessment.criticalities.insert_or_assign(UnitId::Parse(seg), CriticalityAssignment{levels[rng() % 3], "generated"});
  }
  rc.assessment.adversary_tier = 1 + static_cast<int>(rng() % 7);
  rc.assessment.adversary_justification = "generated";
  rc.assessment.threshold_justification = "generated";
  rc.assessment.strategy = Strategy::kAll;
  return rc;
}

}  // namespace mission_risk::testing

#endif  // MISSION_RISK_TESTS_SUPPORT_H_
