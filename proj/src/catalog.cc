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

#include "mission_risk/catalog.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "default_risk_matrix_json.h"
#include "json_reader.h"
#include "mission_risk/error.h"

namespace mission_risk {

using internal::AsArray;
using internal::AsInt;
using internal::AsStringList;
using internal::ChildPath;
using internal::Json;
using internal::ObjectReader;

std::string_view FrameworkName(Framework framework) {
  return framework == Framework::kSparta ? "SPARTA" : "ATTACK";
}

std::optional<Framework> ParseFramework(std::string_view name) {
  if (name == "SPARTA") return Framework::kSparta;
  if (name == "ATTACK") return Framework::kAttack;
  return std::nullopt;
}

std::optional<TechniqueId> TechniqueId::TryParse(std::string_view id) {
  static const std::regex kSparta(R"([A-Z]{2,4}-\d{4}(\.\d+)?)");
  static const std::regex kAttack(R"(T\d{4}(\.\d{3})?)");
  const std::string s(id);
  if (std::regex_match(s, kSparta)) return TechniqueId(Framework::kSparta, s);
  if (std::regex_match(s, kAttack)) return TechniqueId(Framework::kAttack, s);
  return std::nullopt;
}

TechniqueId TechniqueId::Parse(std::string_view id) {
  auto parsed = TryParse(id);
  if (!parsed) {
    throw Error(ErrorCode::kSchema,
                "'" + std::string(id) + "' is not a SPARTA or ATT&CK technique id");
  }
  return *std::move(parsed);
}

bool TechniqueId::is_subtechnique() const {
  return id_.find('.') != std::string::npos;
}

std::optional<TechniqueId> TechniqueId::parent() const {
  const auto dot = id_.find('.');
  if (dot == std::string::npos) return std::nullopt;
  return TechniqueId(framework_, id_.substr(0, dot));
}

std::string_view CriticalityName(Criticality criticality) {
  switch (criticality) {
    case Criticality::kLow: return "Low";
    case Criticality::kMedium: return "Medium";
    case Criticality::kHigh: return "High";
  }
  return "Low";
}

std::optional<Criticality> ParseCriticality(std::string_view name) {
  if (name == "Low") return Criticality::kLow;
  if (name == "Medium") return Criticality::kMedium;
  if (name == "High") return Criticality::kHigh;
  return std::nullopt;
}

std::string_view BandName(Band band) {
  switch (band) {
    case Band::kLow: return "Low";
    case Band::kMedium: return "Medium";
    case Band::kHigh: return "High";
  }
  return "Low";
}

std::optional<Band> ParseBand(std::string_view name) {
  if (name == "Low") return Band::kLow;
  if (name == "Medium") return Band::kMedium;
  if (name == "High") return Band::kHigh;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// RiskMatrix

std::vector<std::string> MatrixViolations(const RiskMatrix::Cells& cells,
                                          const RiskMatrix::Bands& bands) {
  constexpr int n = RiskMatrix::kSize;
  std::vector<std::string> issues;
  auto at = [](int l, int i) { return "cell(" + std::to_string(l) + "," + std::to_string(i) + ")"; };
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      const int v = cells[l][i];
      if (v < 1 || v > 25) {
        issues.push_back(at(l + 1, i + 1) + "=" + std::to_string(v) + " outside 1..25");
      }
      if (l + 1 < n && cells[l + 1][i] < v) {
        issues.push_back("non-monotone: " + at(l + 2, i + 1) + " < " + at(l + 1, i + 1));
      }
      if (i + 1 < n && cells[l][i + 1] < v) {
        issues.push_back("non-monotone: " + at(l + 1, i + 2) + " < " + at(l + 1, i + 1));
      }
    }
  }
  if (cells[0][0] != 1) issues.push_back("cell(1,1) must be 1");
  if (cells[n - 1][n - 1] != 25) issues.push_back("cell(5,5) must be 25");

  // Bands must tile 1..25 in Low, Medium, High order.
  int expected_low = 1;
  for (size_t b = 0; b < bands.size(); ++b) {
    const auto name = std::string(BandName(static_cast<Band>(b)));
    if (bands[b].low != expected_low) {
      issues.push_back("band " + name + " must start at " + std::to_string(expected_low));
    }
    if (bands[b].high < bands[b].low) {
      issues.push_back("band " + name + " is empty");
    }
    expected_low = bands[b].high + 1;
  }
  if (bands.back().high != 25) issues.push_back("band High must end at 25");
  return issues;
}

RiskMatrix RiskMatrix::Create(const Cells& cells, const Bands& bands) {
  auto issues = MatrixViolations(cells, bands);
  if (!issues.empty()) {
    const std::string message = "invalid risk matrix: " + issues.front();
    throw Error(ErrorCode::kIntegrity, message, std::move(issues));
  }
  return RiskMatrix(cells, bands);
}

int RiskMatrix::value(int likelihood, int impact) const {
  if (likelihood < 1 || likelihood > kSize || impact < 1 || impact > kSize) {
    throw Error(ErrorCode::kRange, "matrix coordinates (" + std::to_string(likelihood) +
                                       "," + std::to_string(impact) + ") outside 1..5");
  }
  return cells_[likelihood - 1][impact - 1];
}

Band RiskMatrix::band(int value) const {
  for (size_t b = 0; b < bands_.size(); ++b) {
    if (bands_[b].contains(value)) return static_cast<Band>(b);
  }
  throw Error(ErrorCode::kRange, "risk value " + std::to_string(value) + " outside 1..25");
}

namespace {

RiskMatrix ReadMatrix(const Json& node, const std::string& path) {
  ObjectReader reader(node, path);
  const auto rows_path = reader.PathOf("cells");
  const auto& rows = AsArray(reader.Required("cells"), rows_path);
  if (rows.size() != RiskMatrix::kSize) internal::SchemaFail(rows_path, "expected 5 rows");
  RiskMatrix::Cells cells{};
  for (size_t l = 0; l < rows.size(); ++l) {
    const auto row_path = ChildPath(rows_path, l);
    const auto& row = AsArray(rows[l], row_path);
    if (row.size() != RiskMatrix::kSize) internal::SchemaFail(row_path, "expected 5 cells");
    for (size_t i = 0; i < row.size(); ++i) {
      cells[l][i] = AsInt(row[i], ChildPath(row_path, i));
    }
  }
  auto bands = RiskMatrix::DefaultBands();
  if (const Json* bands_node = reader.Optional("bands")) {
    ObjectReader bands_reader(*bands_node, reader.PathOf("bands"));
    for (size_t b = 0; b < bands.size(); ++b) {
      const auto name = BandName(static_cast<Band>(b));
      const auto band_path = bands_reader.PathOf(name);
      const auto& pair = AsArray(bands_reader.Required(name), band_path);
      if (pair.size() != 2) internal::SchemaFail(band_path, "expected [low, high]");
      bands[b] = {AsInt(pair[0], ChildPath(band_path, 0)),
                  AsInt(pair[1], ChildPath(band_path, 1))};
    }
    bands_reader.Finish();
  }
  reader.OptionalString("note");
  reader.Finish();
  return RiskMatrix::Create(cells, bands);
}

Json MatrixToJson(const RiskMatrix& matrix) {
  Json rows = Json::array();
  for (const auto& row : matrix.cells()) rows.push_back(row);
  Json bands = Json::object();
  for (size_t b = 0; b < matrix.bands().size(); ++b) {
    const auto& r = matrix.bands()[b];
    bands[std::string(BandName(static_cast<Band>(b)))] = {r.low, r.high};
  }
  return {{"cells", rows}, {"bands", bands}};
}

std::string ControlFamily(const std::string& id) {
  std::string family;
  for (char c : id) {
    if (!std::isalpha(static_cast<unsigned char>(c))) break;
    family += c;
  }
  return family;
}

Catalog ReadCatalog(const Json& doc) {
  ObjectReader root(doc, "");
  internal::RequireSchemaVersion(root);

  Catalog catalog;
  catalog.name = root.OptionalString("name");
  catalog.description = root.OptionalString("description");
  std::vector<std::string> issues;

  {
    const auto path = root.PathOf("techniques");
    const auto& list = AsArray(root.Required("techniques"), path);
    for (size_t k = 0; k < list.size(); ++k) {
      ObjectReader r(list[k], ChildPath(path, k));
      const auto id_text = r.RequiredText("id");
      auto id = TechniqueId::TryParse(id_text);
      if (!id) internal::SchemaFail(r.PathOf("id"), "malformed technique id '" + id_text + "'");
      const auto fw_text = r.RequiredText("framework");
      const auto framework = ParseFramework(fw_text);
      if (!framework) internal::SchemaFail(r.PathOf("framework"), "expected SPARTA or ATTACK");
      if (*framework != id->framework()) {
        issues.push_back("technique " + id_text + " does not match framework " + fw_text);
      }
      Technique technique{*id, r.RequiredText("name"), r.RequiredText("tactic"),
                          AsStringList(r.Required("countermeasures"), r.PathOf("countermeasures")),
                          r.OptionalString("note")};
      r.Finish();
      std::set<std::string> seen;
      for (const auto& cm : technique.countermeasures) {
        if (!seen.insert(cm).second) {
          issues.push_back("technique " + id_text + " lists countermeasure " + cm + " twice");
        }
      }
      if (!catalog.techniques.emplace(*id, std::move(technique)).second) {
        issues.push_back("duplicate technique id " + id_text);
      }
    }
  }
  {
    const auto path = root.PathOf("countermeasures");
    const auto& list = AsArray(root.Required("countermeasures"), path);
    for (size_t k = 0; k < list.size(); ++k) {
      ObjectReader r(list[k], ChildPath(path, k));
      Countermeasure cm{r.RequiredText("id"), r.RequiredText("description"),
                        AsStringList(r.Required("controls"), r.PathOf("controls")),
                        r.OptionalString("note")};
      r.Finish();
      std::set<std::string> seen;
      for (const auto& control : cm.controls) {
        if (!seen.insert(control).second) {
          issues.push_back("countermeasure " + cm.id + " lists control " + control + " twice");
        }
      }
      const auto id = cm.id;
      if (!catalog.countermeasures.emplace(id, std::move(cm)).second) {
        issues.push_back("duplicate countermeasure id " + id);
      }
    }
  }
  {
    const auto path = root.PathOf("controls");
    const auto& list = AsArray(root.Required("controls"), path);
    for (size_t k = 0; k < list.size(); ++k) {
      ObjectReader r(list[k], ChildPath(path, k));
      SecurityControl control{r.RequiredText("id"), r.RequiredText("family"),
                              r.RequiredText("title")};
      r.Finish();
      if (control.family != ControlFamily(control.id)) {
        issues.push_back("control " + control.id + " has family " + control.family +
                         ", expected " + ControlFamily(control.id));
      }
      const auto id = control.id;
      if (!catalog.controls.emplace(id, std::move(control)).second) {
        issues.push_back("duplicate control id " + id);
      }
    }
  }
  if (const Json* node = root.Optional("base_scores")) {
    const auto path = root.PathOf("base_scores");
    const auto& list = AsArray(*node, path);
    for (size_t k = 0; k < list.size(); ++k) {
      ObjectReader r(list[k], ChildPath(path, k));
      const auto tech_text = r.RequiredText("technique");
      auto tech = TechniqueId::TryParse(tech_text);
      if (!tech) internal::SchemaFail(r.PathOf("technique"), "malformed technique id '" + tech_text + "'");
      const auto crit_text = r.RequiredText("criticality");
      const auto crit = ParseCriticality(crit_text);
      if (!crit) internal::SchemaFail(r.PathOf("criticality"), "expected High, Medium or Low");
      BaseScoreEntry entry{{r.RequiredInt("likelihood"), r.RequiredInt("impact")},
                           r.OptionalString("note")};
      r.Finish();
      const auto where = tech_text + "/" + crit_text;
      for (int v : {entry.score.likelihood, entry.score.impact}) {
        if (v < 1 || v > 5) {
          issues.push_back("base score " + where + " has value " + std::to_string(v) +
                           " outside 1..5");
        }
      }
      if (!catalog.techniques.contains(*tech)) {
        issues.push_back("base score names unknown technique " + tech_text);
      }
      if (!catalog.base_scores.emplace(std::pair{*tech, *crit}, entry).second) {
        issues.push_back("duplicate base score " + where);
      }
    }
  }
  if (const Json* node = root.Optional("risk_matrix")) {
    try {
      catalog.matrix = ReadMatrix(*node, root.PathOf("risk_matrix"));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kIntegrity) throw;
      issues.insert(issues.end(), e.issues().begin(), e.issues().end());
    }
  }
  if (const Json* node = root.Optional("tiers")) {
    const auto path = root.PathOf("tiers");
    const auto& list = AsArray(*node, path);
    std::vector<AdversaryTier> tiers;
    for (size_t k = 0; k < list.size(); ++k) {
      ObjectReader r(list[k], ChildPath(path, k));
      tiers.push_back({r.RequiredInt("tier"), r.RequiredText("label")});
      r.Finish();
    }
    if (tiers != StandardTiers()) {
      issues.push_back("tiers must list the seven standard adversary tiers 1..7 in order");
    }
    catalog.tiers = std::move(tiers);
  }
  root.Finish();

  for (const auto& [id, technique] : catalog.techniques) {
    for (const auto& cm : technique.countermeasures) {
      if (!catalog.countermeasures.contains(cm)) {
        issues.push_back("technique " + id.str() + " names unknown countermeasure " + cm);
      }
    }
  }
  for (const auto& [id, cm] : catalog.countermeasures) {
    for (const auto& control : cm.controls) {
      if (!catalog.controls.contains(control)) {
        issues.push_back("countermeasure " + id + " names unknown control " + control);
      }
    }
  }
  if (!issues.empty()) {
    std::string message = issues.front();
    if (issues.size() > 1) message += " (and " + std::to_string(issues.size() - 1) + " more)";
    throw Error(ErrorCode::kIntegrity, message, std::move(issues));
  }
  return catalog;
}

}  // namespace

const RiskMatrix& RiskMatrix::Default() {
  static const RiskMatrix matrix = ReadMatrix(
      internal::ParseDocument(internal::kDefaultRiskMatrixJson, "default risk matrix"),
      "default_risk_matrix");
  return matrix;
}

const std::vector<AdversaryTier>& StandardTiers() {
  static const std::vector<AdversaryTier> tiers = {
      {1, "script kiddies"},
      {2, "hackers for hire"},
      {3, "small hacker teams"},
      {4, "insider threats"},
      {5, "large well-organized teams"},
      {6, "highly capable state actors"},
      {7, "most capable state actors"},
  };
  return tiers;
}

const AdversaryTier* Catalog::tier(int number) const {
  for (const auto& t : tiers) {
    if (t.tier == number) return &t;
  }
  return nullptr;
}

Catalog LoadCatalog(std::string_view text) {
  return ReadCatalog(internal::ParseDocument(text, "catalog"));
}

Catalog LoadCatalog(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return LoadCatalog(buffer.str());
}

Catalog LoadCatalogFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read catalog " + path.string());
  return LoadCatalog(in);
}

std::string SerializeCatalog(const Catalog& catalog) {
  Json doc = Json::object();
  doc["schema"] = 1;
  if (!catalog.name.empty()) doc["name"] = catalog.name;
  if (!catalog.description.empty()) doc["description"] = catalog.description;

  Json techniques = Json::array();
  for (const auto& [id, t] : catalog.techniques) {
    Json j = {{"id", id.str()},
              {"framework", FrameworkName(id.framework())},
              {"name", t.name},
              {"tactic", t.tactic},
              {"countermeasures", t.countermeasures}};
    if (!t.note.empty()) j["note"] = t.note;
    techniques.push_back(std::move(j));
  }
  doc["techniques"] = std::move(techniques);

  Json countermeasures = Json::array();
  for (const auto& [id, cm] : catalog.countermeasures) {
    Json j = {{"id", id}, {"description", cm.description}, {"controls", cm.controls}};
    if (!cm.note.empty()) j["note"] = cm.note;
    countermeasures.push_back(std::move(j));
  }
  doc["countermeasures"] = std::move(countermeasures);

  Json controls = Json::array();
  for (const auto& [id, c] : catalog.controls) {
    controls.push_back({{"id", id}, {"family", c.family}, {"title", c.title}});
  }
  doc["controls"] = std::move(controls);

  Json base_scores = Json::array();
  for (const auto& [key, entry] : catalog.base_scores) {
    Json j = {{"technique", key.first.str()},
              {"criticality", CriticalityName(key.second)},
              {"likelihood", entry.score.likelihood},
              {"impact", entry.score.impact}};
    if (!entry.note.empty()) j["note"] = entry.note;
    base_scores.push_back(std::move(j));
  }
  doc["base_scores"] = std::move(base_scores);
  doc["risk_matrix"] = MatrixToJson(catalog.matrix);

  Json tiers = Json::array();
  for (const auto& t : catalog.tiers) tiers.push_back({{"tier", t.tier}, {"label", t.label}});
  doc["tiers"] = std::move(tiers);
  return doc.dump(2) + "\n";
}

std::optional<BaseScore> LookupBaseScore(const Catalog& catalog,
                                         const TechniqueId& technique,
                                         Criticality criticality) {
  const auto it = catalog.base_scores.find({technique, criticality});
  if (it == catalog.base_scores.end()) return std::nullopt;
  return it->second.score;
}

std::vector<Countermeasure> CountermeasuresFor(const Catalog& catalog,
                                               const TechniqueId& technique) {
  const auto it = catalog.techniques.find(technique);
  if (it == catalog.techniques.end()) {
    throw Error(ErrorCode::kUnknownTechnique, "technique " + technique.str() + " is not in the catalog");
  }
  std::vector<Countermeasure> out;
  out.reserve(it->second.countermeasures.size());
  for (const auto& id : it->second.countermeasures) {
    out.push_back(catalog.countermeasures.at(id));
  }
  return out;
}

std::vector<SecurityControl> ResolveControls(const Catalog& catalog,
                                             const CountermeasureId& countermeasure) {
  const auto it = catalog.countermeasures.find(countermeasure);
  if (it == catalog.countermeasures.end()) {
    throw Error(ErrorCode::kUnknownCountermeasure,
                "countermeasure " + countermeasure + " is not in the catalog");
  }
  std::set<ControlId> ids(it->second.controls.begin(), it->second.controls.end());
  std::vector<SecurityControl> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(catalog.controls.at(id));
  return out;
}

}  // namespace mission_risk
