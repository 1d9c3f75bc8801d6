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

#include "mission_risk/risk_engine.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json_reader.h"
#include "mission_risk/error.h"

namespace mission_risk {

using internal::AsArray;
using internal::AsStringList;
using internal::AsText;
using internal::ChildPath;
using internal::Json;
using internal::ObjectReader;

std::string_view StrategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::kExplicit: return "Explicit";
    case Strategy::kAll: return "All";
    case Strategy::kGreedyMinControls: return "GreedyMinControls";
  }
  return "Explicit";
}

std::optional<Strategy> ParseStrategy(std::string_view name) {
  if (name == "Explicit") return Strategy::kExplicit;
  if (name == "All") return Strategy::kAll;
  if (name == "GreedyMinControls") return Strategy::kGreedyMinControls;
  return std::nullopt;
}

std::string_view ProvenanceName(Provenance provenance) {
  return provenance == Provenance::kFromBase ? "FromBase" : "Tailored";
}

// ---------------------------------------------------------------------------
// Loading

namespace {

TechniqueId ReadTechnique(const Json& node, const std::string& path) {
  const auto& text = AsText(node, path);
  auto id = TechniqueId::TryParse(text);
  if (!id) internal::SchemaFail(path, "malformed technique id '" + text + "'");
  return *std::move(id);
}

Assessment ReadAssessment(const Json& doc) {
  ObjectReader root(doc, "");
  internal::RequireSchemaVersion(root);
  Assessment a;
  std::vector<std::string> issues;
  a.mission = root.RequiredText("mission");

  {
    const auto path = root.PathOf("criticalities");
    const auto& list = AsArray(root.Required("criticalities"), path);
    for (size_t k = 0; k < list.size(); ++k) {
      ObjectReader r(list[k], ChildPath(path, k));
      const auto unit_text = r.RequiredText("unit");
      auto unit = UnitId::TryParse(unit_text);
      if (!unit) internal::SchemaFail(r.PathOf("unit"), "malformed unit path '" + unit_text + "'");
      const auto level = ParseCriticality(r.RequiredText("level"));
      if (!level) internal::SchemaFail(r.PathOf("level"), "expected High, Medium or Low");
      CriticalityAssignment assignment{*level, r.RequiredText("justification")};
      r.Finish();
      if (!a.criticalities.emplace(*unit, std::move(assignment)).second) {
        issues.push_back("criticality assigned twice to " + unit_text);
      }
    }
  }
  {
    ObjectReader r(root.Required("adversary"), root.PathOf("adversary"));
    a.adversary_tier = r.RequiredInt("tier");
    a.adversary_justification = r.RequiredText("justification");
    r.Finish();
    if (a.adversary_tier < 1 || a.adversary_tier > 7) {
      issues.push_back("adversary tier " + std::to_string(a.adversary_tier) + " outside 1..7");
    }
  }
  {
    ObjectReader r(root.Required("threshold"), root.PathOf("threshold"));
    const auto band = ParseBand(r.RequiredText("level"));
    if (!band) internal::SchemaFail(r.PathOf("level"), "expected Low, Medium or High");
    a.threshold = *band;
    a.threshold_justification = r.RequiredText("justification");
    r.Finish();
  }
  if (const Json* node = root.Optional("tailorings")) {
    const auto path = root.PathOf("tailorings");
    const auto& list = AsArray(*node, path);
    for (size_t k = 0; k < list.size(); ++k) {
      ObjectReader r(list[k], ChildPath(path, k));
      const auto tech = ReadTechnique(r.Required("technique"), r.PathOf("technique"));
      Tailoring t;
      if (const Json* l = r.Optional("likelihood")) t.likelihood = internal::AsInt(*l, r.PathOf("likelihood"));
      if (const Json* i = r.Optional("impact")) t.impact = internal::AsInt(*i, r.PathOf("impact"));
      t.justification = r.RequiredText("justification");
      r.Finish();
      if (!t.likelihood && !t.impact) {
        issues.push_back("tailoring for " + tech.str() + " overrides neither likelihood nor impact");
      }
      for (const auto& v : {t.likelihood, t.impact}) {
        if (v && (*v < 1 || *v > 5)) {
          issues.push_back("tailoring for " + tech.str() + " has value " + std::to_string(*v) +
                           " outside 1..5");
        }
      }
      if (!a.tailorings.emplace(tech, std::move(t)).second) {
        issues.push_back("technique " + tech.str() + " tailored twice");
      }
    }
  }
  {
    ObjectReader r(root.Required("mitigation"), root.PathOf("mitigation"));
    const auto strategy = ParseStrategy(r.RequiredText("strategy"));
    if (!strategy) {
      internal::SchemaFail(r.PathOf("strategy"), "expected Explicit, All or GreedyMinControls");
    }
    a.strategy = *strategy;
    if (const Json* node = r.Optional("choices")) {
      const auto path = r.PathOf("choices");
      const auto& list = AsArray(*node, path);
      for (size_t k = 0; k < list.size(); ++k) {
        ObjectReader cr(list[k], ChildPath(path, k));
        const auto tech = ReadTechnique(cr.Required("technique"), cr.PathOf("technique"));
        ExplicitChoice choice;
        choice.countermeasures = AsStringList(cr.Required("countermeasures"), cr.PathOf("countermeasures"));
        if (const Json* c = cr.Optional("controls")) {
          choice.controls = AsStringList(*c, cr.PathOf("controls"));
        }
        choice.justification = cr.RequiredText("justification");
        cr.Finish();
        if (!a.explicit_choices.emplace(tech, std::move(choice)).second) {
          issues.push_back("technique " + tech.str() + " has two explicit choices");
        }
      }
    }
    r.Finish();
  }
  if (const Json* node = root.Optional("rationale_notes")) {
    const auto path = root.PathOf("rationale_notes");
    if (!node->is_object()) internal::SchemaFail(path, "expected an object");
    for (const auto& [key, value] : node->items()) {
      auto tech = TechniqueId::TryParse(key);
      if (!tech) internal::SchemaFail(ChildPath(path, key), "malformed technique id '" + key + "'");
      a.rationale_notes.emplace(*tech, AsText(value, ChildPath(path, key)));
    }
  }
  root.Finish();
  if (!issues.empty()) {
    const std::string message = issues.front();
    throw Error(ErrorCode::kIntegrity, message, std::move(issues));
  }
  return a;
}

}  // namespace

Assessment LoadAssessment(std::string_view text) {
  return ReadAssessment(internal::ParseDocument(text, "assessment"));
}

Assessment LoadAssessment(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return LoadAssessment(buffer.str());
}

Assessment LoadAssessmentFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read assessment " + path.string());
  return LoadAssessment(in);
}

std::vector<std::string> CheckConsistency(const Catalog& catalog, const MissionSpec& mission,
                                          std::span<const AttackChain> chains,
                                          const Assessment& assessment) {
  std::vector<std::string> issues;
  if (assessment.mission != mission.name) {
    issues.push_back("assessment targets mission '" + assessment.mission +
                     "' but the mission specification is '" + mission.name + "'");
  }
  if (!catalog.tier(assessment.adversary_tier)) {
    issues.push_back("adversary tier " + std::to_string(assessment.adversary_tier) +
                     " is not defined by the catalog");
  }
  for (const auto& [unit, assignment] : assessment.criticalities) {
    if (!mission.inventory.contains(unit)) {
      issues.push_back("criticality assigned to unknown unit " + unit.str());
    }
  }
  std::set<TechniqueId> in_chains;
  for (const auto& chain : chains) {
    for (const auto& step : chain.steps) {
      in_chains.insert(step.technique);
      if (!catalog.techniques.contains(step.technique)) {
        issues.push_back("attack chain '" + chain.objective + "' uses technique " +
                         step.technique.str() + " which is not in the catalog");
      }
      if (!mission.inventory.contains(step.impacted)) {
        issues.push_back("attack chain '" + chain.objective + "' impacts unknown unit " +
                         step.impacted.str());
      }
    }
  }
  for (const auto& [tech, tailoring] : assessment.tailorings) {
    if (!in_chains.contains(tech)) {
      issues.push_back("tailored technique " + tech.str() + " appears in no attack chain");
    }
  }
  for (const auto& [tech, choice] : assessment.explicit_choices) {
    if (!in_chains.contains(tech)) {
      issues.push_back("explicit choice for " + tech.str() + " which appears in no attack chain");
    }
  }
  return issues;
}

// ---------------------------------------------------------------------------
// Pipeline steps

std::set<std::pair<TechniqueId, UnitId>> ApplicableTechniques(
    std::span<const AttackChain> chains) {
  std::set<std::pair<TechniqueId, UnitId>> out;
  for (const auto& chain : chains) {
    for (const auto& step : chain.steps) out.emplace(step.technique, step.impacted);
  }
  return out;
}

namespace {

const std::pair<const UnitId, CriticalityAssignment>* FindAssignment(
    const Assessment& assessment, const UnitId& unit) {
  for (int level = static_cast<int>(unit.level()); level <= static_cast<int>(Level::kSegment);
       ++level) {
    const auto it = assessment.criticalities.find(unit.ancestor(static_cast<Level>(level)));
    if (it != assessment.criticalities.end()) return &*it;
  }
  return nullptr;
}

}  // namespace

Criticality CriticalityOf(const Assessment& assessment, const UnitId& unit) {
  const auto* found = FindAssignment(assessment, unit);
  if (!found) {
    throw Error(ErrorCode::kUnassignedCriticality,
                "no criticality assigned to " + unit.str() + " or any enclosing unit");
  }
  return found->second.level;
}

TailoredScore Tailor(const std::optional<BaseScore>& base, const Tailoring* tailoring) {
  auto axis = [&](std::optional<int> override_value, std::optional<int> base_value,
                  const char* name, Provenance& from) {
    if (override_value) {
      if (*override_value < 1 || *override_value > 5) {
        throw Error(ErrorCode::kRange, std::string(name) + " override " +
                                           std::to_string(*override_value) + " outside 1..5");
      }
      from = Provenance::kTailored;
      return *override_value;
    }
    if (!base_value) {
      throw Error(ErrorCode::kMissingScore,
                  std::string("no base score and no ") + name + " override");
    }
    from = Provenance::kFromBase;
    return *base_value;
  };
  TailoredScore out;
  const auto none = std::optional<int>();
  out.likelihood = axis(tailoring ? tailoring->likelihood : none,
                        base ? std::optional<int>(base->likelihood) : none, "likelihood",
                        out.likelihood_from);
  out.impact = axis(tailoring ? tailoring->impact : none,
                    base ? std::optional<int>(base->impact) : none, "impact", out.impact_from);
  return out;
}

Placement Place(const RiskMatrix& matrix, int likelihood, int impact) {
  const int value = matrix.value(likelihood, impact);
  return {value, matrix.band(value)};
}

std::set<TechniqueId> FilterIntolerable(std::span<const ScoredTechnique> scored,
                                        Band threshold) {
  std::set<TechniqueId> out;
  for (const auto& s : scored) {
    if (s.band > threshold) out.insert(s.id);
  }
  return out;
}

namespace {

std::set<ControlId> ControlsOf(const Catalog& catalog, const CountermeasureId& cm) {
  std::set<ControlId> out;
  for (const auto& control : ResolveControls(catalog, cm)) out.insert(control.id);
  return out;
}

Selection MakeSelection(const Catalog& catalog, std::vector<CountermeasureId> cms) {
  std::set<ControlId> controls;
  for (const auto& cm : cms) controls.merge(ControlsOf(catalog, cm));
  return {std::move(cms), {controls.begin(), controls.end()}};
}

}  // namespace

Selection SelectMitigations(const TechniqueId& technique, const Catalog& catalog,
                            Strategy strategy,
                            const std::map<TechniqueId, ExplicitChoice>& explicit_choices) {
  const auto mapped = CountermeasuresFor(catalog, technique);
  if (mapped.empty()) {
    throw Error(ErrorCode::kNoCountermeasures,
                "technique " + technique.str() + " maps to no countermeasure");
  }

  if (const auto it = explicit_choices.find(technique); it != explicit_choices.end()) {
    const auto& choice = it->second;
    if (choice.countermeasures.empty()) {
      throw Error(ErrorCode::kInvalidChoice,
                  "explicit choice for " + technique.str() + " names no countermeasure");
    }
    std::set<CountermeasureId> seen;
    for (const auto& cm : choice.countermeasures) {
      const bool is_mapped = std::any_of(mapped.begin(), mapped.end(),
                                         [&](const Countermeasure& m) { return m.id == cm; });
      if (!is_mapped) {
        throw Error(ErrorCode::kInvalidChoice,
                    "countermeasure " + cm + " is not mapped to " + technique.str());
      }
      if (!seen.insert(cm).second) {
        throw Error(ErrorCode::kInvalidChoice,
                    "countermeasure " + cm + " chosen twice for " + technique.str());
      }
    }
    auto selection = MakeSelection(catalog, choice.countermeasures);
    if (choice.controls) {
      const std::set<ControlId> available(selection.controls.begin(), selection.controls.end());
      std::set<ControlId> narrowed;
      for (const auto& control : *choice.controls) {
        if (!available.contains(control)) {
          throw Error(ErrorCode::kInvalidChoice,
                      "control " + control + " does not fulfil the countermeasures chosen for " +
                          technique.str());
        }
        narrowed.insert(control);
      }
      if (narrowed.empty()) {
        throw Error(ErrorCode::kInvalidChoice,
                    "explicit choice for " + technique.str() + " narrows to no control");
      }
      selection.controls.assign(narrowed.begin(), narrowed.end());
    }
    return selection;
  }

  switch (strategy) {
    case Strategy::kExplicit:
      throw Error(ErrorCode::kInvalidChoice,
                  "strategy Explicit but no choice given for " + technique.str());
    case Strategy::kAll: {
      std::vector<CountermeasureId> ids;
      for (const auto& cm : mapped) ids.push_back(cm.id);
      return MakeSelection(catalog, std::move(ids));
    }
    case Strategy::kGreedyMinControls: {
      // Ascending control-set size, ties by id; the first pick suffices.
      const Countermeasure* best = nullptr;
      size_t best_size = 0;
      for (const auto& cm : mapped) {
        const size_t size = ControlsOf(catalog, cm.id).size();
        if (!best || size < best_size || (size == best_size && cm.id < best->id)) {
          best = &cm;
          best_size = size;
        }
      }
      return MakeSelection(catalog, {best->id});
    }
  }
  throw Error(ErrorCode::kInvalidChoice, "unknown strategy");
}

// ---------------------------------------------------------------------------
// Full run

namespace {

std::string Pair(int a, int b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

std::string Join(const std::vector<std::string>& items, const char* sep = ", ") {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += sep;
    out += item;
  }
  return out;
}

}  // namespace

AssessmentResult RunAssessment(const Catalog& catalog, const MissionSpec& mission,
                               std::span<const AttackChain> chains,
                               const Assessment& assessment) {
  std::vector<std::string> issues = CheckConsistency(catalog, mission, chains, assessment);
  AssessmentResult result;
  auto& log = result.audit_log;

  if (const auto* tier = catalog.tier(assessment.adversary_tier)) {
    log.push_back({"adversary", "tier " + std::to_string(tier->tier), tier->label,
                   assessment.adversary_justification});
  }
  log.push_back({"threshold", "tau", std::string(BandName(assessment.threshold)),
                 assessment.threshold_justification});

  const auto graph = mission.graph();
  for (const auto& chain : chains) {
    OverlayReport overlay;
    try {
      overlay = OverlayChain(graph, chain, mission.inventory);
    } catch (const Error&) {
      continue;  // unknown units are already reported by CheckConsistency
    }
    for (const auto& step : chain.steps) {
      const bool on = std::find(overlay.on_mission.begin(), overlay.on_mission.end(), step) !=
                      overlay.on_mission.end();
      log.push_back({"applicable", step.technique.str() + " @ " + step.impacted.str(),
                     "chain '" + chain.objective + "'" + (on ? " (on mission)" : " (off mission)"),
                     chain.justification});
    }
  }

  for (const auto& [technique, unit] : ApplicableTechniques(chains)) {
    const auto subject = technique.str() + " @ " + unit.str();
    const auto* assignment = FindAssignment(assessment, unit);
    if (!assignment) {
      issues.push_back("UnassignedCriticality: " + subject);
      continue;
    }
    const auto criticality = assignment->second.level;
    log.push_back({"criticality", subject,
                   std::string(CriticalityName(criticality)) + " (assigned at " +
                       assignment->first.str() + ")",
                   assignment->second.justification});

    const auto base = LookupBaseScore(catalog, technique, criticality);
    log.push_back({"lookup", subject,
                   base ? "base " + Pair(base->likelihood, base->impact) + " at " +
                              std::string(CriticalityName(criticality))
                        : "no base score at " + std::string(CriticalityName(criticality)),
                   ""});

    const auto tailoring_it = assessment.tailorings.find(technique);
    const Tailoring* tailoring =
        tailoring_it == assessment.tailorings.end() ? nullptr : &tailoring_it->second;
    TailoredScore final;
    try {
      final = Tailor(base, tailoring);
    } catch (const Error& e) {
      issues.push_back(std::string(ErrorCodeName(e.code())) + ": " + subject + ": " +
                       (e.code() == ErrorCode::kMissingScore
                            ? "no base score and the tailoring does not supply both axes"
                            : e.what()));
      continue;
    }
    if (tailoring) {
      log.push_back({"tailor", subject,
                     "likelihood " + std::to_string(final.likelihood) + " (" +
                         std::string(ProvenanceName(final.likelihood_from)) + "), impact " +
                         std::to_string(final.impact) + " (" +
                         std::string(ProvenanceName(final.impact_from)) + ")",
                     tailoring->justification});
    }

    const auto placement = Place(catalog.matrix, final.likelihood, final.impact);
    log.push_back({"place", subject,
                   Pair(final.likelihood, final.impact) + " -> " + std::to_string(placement.value) +
                       " " + std::string(BandName(placement.band)),
                   ""});
    result.scored.push_back(
        {technique, unit, criticality, base, final, placement.value, placement.band});
  }

  result.intolerable = FilterIntolerable(result.scored, assessment.threshold);
  for (const auto& s : result.scored) {
    const bool over = s.band > assessment.threshold;
    log.push_back({"filter", s.id.str() + " @ " + s.impacted.str(),
                   std::string(BandName(s.band)) + (over ? " > " : " <= ") +
                       std::string(BandName(assessment.threshold)) +
                       (over ? ": intolerable" : ": tolerated"),
                   ""});
  }

  for (const auto& technique : result.intolerable) {
    Selection selection;
    try {
      selection = SelectMitigations(technique, catalog, assessment.strategy,
                                    assessment.explicit_choices);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kNoCountermeasures) {
        result.unmitigable.insert(technique);
        log.push_back({"select", technique.str(), "unmitigable: no mapped countermeasure", ""});
      } else {
        issues.push_back(e.what());
      }
      continue;
    }
    const auto choice_it = assessment.explicit_choices.find(technique);
    const bool is_explicit = choice_it != assessment.explicit_choices.end();
    log.push_back({"select", technique.str(),
                   std::string(is_explicit ? "Explicit" : StrategyName(assessment.strategy)) +
                       ": " + Join(selection.countermeasures) + " -> " +
                       Join(selection.controls),
                   is_explicit ? choice_it->second.justification : ""});
    result.control_union.insert(selection.controls.begin(), selection.controls.end());
    result.selections.emplace(technique, std::move(selection));
  }

  for (const auto& [technique, note] : assessment.rationale_notes) {
    log.push_back({"note", technique.str(), note, ""});
  }

  if (!issues.empty()) {
    const std::string message =
        std::to_string(issues.size()) + " problem(s) in assessment: " + issues.front();
    throw Error(ErrorCode::kAssessment, message, std::move(issues));
  }
  return result;
}

}  // namespace mission_risk
