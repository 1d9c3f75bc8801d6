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

#include "mission_risk/reporting.h"

#include <openssl/evp.h>

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "json_reader.h"
#include "mission_risk/error.h"

namespace mission_risk {

using internal::AsArray;
using internal::AsInt;
using internal::AsString;
using internal::AsStringList;
using internal::ChildPath;
using internal::Json;
using internal::ObjectReader;

MatrixRender BuildMatrixRender(std::span<const ScoredTechnique> scored,
                               const RiskMatrix& matrix) {
  MatrixRender render;
  for (int l = 1; l <= RiskMatrix::kSize; ++l) {
    for (int i = 1; i <= RiskMatrix::kSize; ++i) {
      auto& cell = render.grid[l - 1][i - 1];
      cell.value = matrix.value(l, i);
      cell.band = matrix.band(cell.value);
    }
  }
  for (const auto& s : scored) {
    auto& ids = render.grid[s.final.likelihood - 1][s.final.impact - 1].techniques;
    const auto pos = std::lower_bound(ids.begin(), ids.end(), s.id.str());
    if (pos == ids.end() || *pos != s.id.str()) ids.insert(pos, s.id.str());
  }
  return render;
}

namespace {

std::string Join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += sep;
    out += item;
  }
  return out;
}

std::string CellText(const MatrixCell& cell) {
  std::string text = std::to_string(cell.value) + " " + BandName(cell.band).front();
  if (!cell.techniques.empty()) text += " " + Join(cell.techniques, ",");
  return text;
}

std::string RenderText(const MatrixRender& render, const RiskMatrix& matrix) {
  constexpr int n = RiskMatrix::kSize;
  size_t width = 8;
  for (const auto& row : render.grid) {
    for (const auto& cell : row) width = std::max(width, CellText(cell).size());
  }
  std::ostringstream out;
  std::string rule = "     +";
  for (int i = 0; i < n; ++i) rule += std::string(width + 2, '-') + "+";

  out << "likelihood\n";
  out << rule << "\n";
  for (int l = n; l >= 1; --l) {
    out << "  " << l << "  |";
    for (int i = 1; i <= n; ++i) {
      out << " " << std::left << std::setw(static_cast<int>(width))
          << CellText(render.grid[l - 1][i - 1]) << " |";
    }
    out << "\n" << rule << "\n";
  }
  out << "      ";
  for (int i = 1; i <= n; ++i) {
    const std::string label = std::to_string(i);
    const size_t pad = (width + 3 - label.size()) / 2;
    out << std::string(pad, ' ') << label << std::string(width + 3 - pad - label.size(), ' ');
  }
  out << " impact\n\n";
  for (Band b : {Band::kLow, Band::kMedium, Band::kHigh}) {
    const auto& r = matrix.range(b);
    out << BandName(b).front() << " = " << BandName(b) << " (" << r.low << "-" << r.high << ")\n";
  }
  return out.str();
}

std::string XmlEscape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string RenderSvg(const MatrixRender& render, const RiskMatrix& matrix) {
  constexpr int n = RiskMatrix::kSize;
  constexpr int cell_w = 130, cell_h = 90, left = 70, top = 20, bottom = 110;
  const int width = left + n * cell_w + 20;
  const int height = top + n * cell_h + bottom;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
      << "\" font-family=\"Helvetica, Arial, sans-serif\">\n";
  for (int l = n; l >= 1; --l) {
    const int y = top + (n - l) * cell_h;
    for (int i = 1; i <= n; ++i) {
      const int x = left + (i - 1) * cell_w;
      const auto& cell = render.grid[l - 1][i - 1];
      out << "  <g class=\"cell band-" << BandName(cell.band) << "\" data-likelihood=\"" << l
          << "\" data-impact=\"" << i << "\">\n"
          << "    <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_w
          << "\" height=\"" << cell_h << "\" fill=\"" << kPalette.band(cell.band)
          << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n"
          << "    <text x=\"" << x + 6 << "\" y=\"" << y + 18
          << "\" font-size=\"14\" font-weight=\"bold\">" << cell.value << "</text>\n";
      int line = 0;
      for (const auto& id : cell.techniques) {
        out << "    <text x=\"" << x + 6 << "\" y=\"" << y + 38 + 16 * line++
            << "\" font-size=\"12\">" << XmlEscape(id) << "</text>\n";
      }
      out << "  </g>\n";
    }
    out << "  <text x=\"" << left - 20 << "\" y=\"" << y + cell_h / 2 + 5
        << "\" font-size=\"14\" text-anchor=\"middle\">" << l << "</text>\n";
  }
  const int axis_y = top + n * cell_h;
  for (int i = 1; i <= n; ++i) {
    out << "  <text x=\"" << left + (i - 1) * cell_w + cell_w / 2 << "\" y=\"" << axis_y + 20
        << "\" font-size=\"14\" text-anchor=\"middle\">" << i << "</text>\n";
  }
  out << "  <text x=\"" << left + n * cell_w / 2 << "\" y=\"" << axis_y + 42
      << "\" font-size=\"14\" text-anchor=\"middle\">impact</text>\n"
      << "  <text x=\"18\" y=\"" << top + n * cell_h / 2
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << top + n * cell_h / 2 << ")\">likelihood</text>\n";
  int legend_x = left;
  for (Band b : {Band::kLow, Band::kMedium, Band::kHigh}) {
    const auto& r = matrix.range(b);
    out << "  <rect x=\"" << legend_x << "\" y=\"" << axis_y + 62
        << "\" width=\"16\" height=\"16\" fill=\"" << kPalette.band(b)
        << "\" stroke=\"#000000\"/>\n"
        << "  <text x=\"" << legend_x + 22 << "\" y=\"" << axis_y + 75 << "\" font-size=\"12\">"
        << BandName(b) << " (" << r.low << "-" << r.high << ")</text>\n";
    legend_x += 160;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string RenderMatrix(std::span<const ScoredTechnique> scored, const RiskMatrix& matrix,
                         MatrixFormat format) {
  const auto render = BuildMatrixRender(scored, matrix);
  return format == MatrixFormat::kText ? RenderText(render, matrix) : RenderSvg(render, matrix);
}

// ---------------------------------------------------------------------------
// DOT

namespace {

std::string DotQuote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string ExportDot(const MissionGraph& mission, std::span<const AttackChain> chains,
                      std::span<const AttackFlow> flows, const Inventory& inventory) {
  std::set<UnitId> nodes = mission.nodes;
  std::map<UnitId, std::set<std::string>> techniques;
  for (const auto& chain : chains) {
    for (const auto& step : chain.steps) {
      if (!inventory.contains(step.impacted)) {
        throw Error(ErrorCode::kUnknownUnit, "attack chain '" + chain.objective +
                                                 "' impacts unknown unit " + step.impacted.str());
      }
      nodes.insert(step.impacted);
      techniques[step.impacted].insert(step.technique.str());
    }
  }
  std::set<std::tuple<UnitId, UnitId, std::string>> attack_arcs;
  for (const auto& flow : flows) {
    for (const auto& unit : flow.units) {
      if (!inventory.contains(unit)) {
        throw Error(ErrorCode::kUnknownUnit,
                    "attack flow '" + flow.label + "' visits unknown unit " + unit.str());
      }
      nodes.insert(unit);
    }
    for (size_t k = 0; k + 1 < flow.units.size(); ++k) {
      attack_arcs.emplace(flow.units[k], flow.units[k + 1], flow.label);
    }
  }

  std::ostringstream out;
  out << "digraph mission {\n";
  if (nodes.empty()) {
    out << "}\n";
    return out.str();
  }
  out << "  graph [rankdir=LR, fontname=\"Helvetica\", compound=true];\n"
      << "  node [shape=box, style=\"rounded,filled\", fillcolor=\"#FFFFFF\", "
         "fontname=\"Helvetica\"];\n"
      << "  edge [fontname=\"Helvetica\", fontsize=10];\n";

  auto label_of = [&](const UnitId& id) {
    const Unit* unit = inventory.find(id);
    return unit ? unit->label : id.str();
  };
  auto emit_node = [&](const UnitId& id, const std::string& indent) {
    std::string label = label_of(id);
    const auto it = techniques.find(id);
    out << indent << DotQuote(id.str()) << " [label=";
    if (it != techniques.end()) {
      std::vector<std::string> ids(it->second.begin(), it->second.end());
      label += "\n[" + Join(ids, ", ") + "]";
      out << DotQuote(label) << ", color=" << DotQuote(kPalette.technique_outline)
          << ", penwidth=2";
    } else {
      out << DotQuote(label);
    }
    out << "];\n";
  };

  // segment -> component -> nodes, all sorted by id.
  std::map<UnitId, std::map<UnitId, std::vector<UnitId>>> tree;
  for (const auto& id : nodes) {
    auto& components = tree[id.ancestor(Level::kSegment)];
    if (id.level() == Level::kModule) {
      components[id.ancestor(Level::kComponent)].push_back(id);
    } else {
      components[id];  // segment/component-level node sits in the segment cluster
    }
  }
  for (const auto& [segment, components] : tree) {
    out << "  subgraph " << DotQuote("cluster_" + segment.str()) << " {\n"
        << "    label=" << DotQuote(label_of(segment)) << ";\n"
        << "    style=\"rounded\";\n";
    for (const auto& [component, modules] : components) {
      if (modules.empty()) {
        emit_node(component, "    ");
        continue;
      }
      out << "    subgraph " << DotQuote("cluster_" + component.str()) << " {\n"
          << "      label=" << DotQuote(label_of(component)) << ";\n"
          << "      style=\"dashed\";\n";
      if (nodes.contains(component)) emit_node(component, "      ");
      for (const auto& module : modules) emit_node(module, "      ");
      out << "    }\n";
    }
    out << "  }\n";
  }
  for (const auto& arc : mission.arcs) {
    const bool control = arc.kind == FlowKind::kControl;
    out << "  " << DotQuote(arc.from.str()) << " -> " << DotQuote(arc.to.str())
        << " [class=" << DotQuote(FlowKindName(arc.kind)) << ", color="
        << DotQuote(control ? kPalette.control_arc : kPalette.data_arc)
        << ", style=" << (control ? "solid" : "dashed") << "];\n";
  }
  for (const auto& [from, to, label] : attack_arcs) {
    out << "  " << DotQuote(from.str()) << " -> " << DotQuote(to.str())
        << " [class=\"attack\", color=" << DotQuote(kPalette.attack_arc)
        << ", style=bold, label=" << DotQuote(label) << "];\n";
  }
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Reports

namespace {

Json ScoreJson(int likelihood, int impact) {
  return {{"likelihood", likelihood}, {"impact", impact}};
}

Json ToJson(const Report& report) {
  const auto& m = report.metadata;
  const auto& r = report.result;
  auto input = [](const InputRef& ref) { return Json{{"name", ref.name}, {"sha256", ref.sha256}}; };

  Json doc = Json::object();
  doc["schema"] = 1;
  doc["metadata"] = {
      {"tool_version", m.tool_version},
      {"timestamp", m.timestamp ? Json(*m.timestamp) : Json(nullptr)},
      {"inputs", {{"catalog", input(m.catalog)},
                  {"mission", input(m.mission)},
                  {"assessment", input(m.assessment)}}},
      {"adversary_tier", m.adversary_tier},
      {"threshold", BandName(m.threshold)},
      {"strategy", StrategyName(m.strategy)},
  };
  Json rows = Json::array();
  for (const auto& row : report.matrix.cells()) rows.push_back(row);
  Json bands = Json::object();
  for (Band b : {Band::kLow, Band::kMedium, Band::kHigh}) {
    bands[std::string(BandName(b))] = {report.matrix.range(b).low, report.matrix.range(b).high};
  }
  doc["risk_matrix"] = {{"cells", rows}, {"bands", bands}};

  Json scored = Json::array();
  for (const auto& s : r.scored) {
    Json final = ScoreJson(s.final.likelihood, s.final.impact);
    final["likelihood_from"] = ProvenanceName(s.final.likelihood_from);
    final["impact_from"] = ProvenanceName(s.final.impact_from);
    scored.push_back({{"technique", s.id.str()},
                      {"impacted", s.impacted.str()},
                      {"criticality", CriticalityName(s.criticality)},
                      {"base", s.base ? ScoreJson(s.base->likelihood, s.base->impact) : Json(nullptr)},
                      {"final", final},
                      {"matrix_value", s.matrix_value},
                      {"band", BandName(s.band)}});
  }
  doc["scored"] = std::move(scored);

  auto id_list = [](const std::set<TechniqueId>& ids) {
    Json list = Json::array();
    for (const auto& id : ids) list.push_back(id.str());
    return list;
  };
  doc["intolerable"] = id_list(r.intolerable);
  doc["unmitigable"] = id_list(r.unmitigable);
  Json selections = Json::object();
  for (const auto& [id, sel] : r.selections) {
    selections[id.str()] = {{"countermeasures", sel.countermeasures}, {"controls", sel.controls}};
  }
  doc["selections"] = std::move(selections);
  doc["control_union"] = Json(std::vector<std::string>(r.control_union.begin(), r.control_union.end()));
  Json log = Json::array();
  for (const auto& rec : r.audit_log) {
    log.push_back({{"step", rec.step},
                   {"subject", rec.subject},
                   {"detail", rec.detail},
                   {"justification", rec.justification}});
  }
  doc["audit_log"] = std::move(log);
  return doc;
}

template <typename T, typename Parse>
T ParseEnum(const Json& node, const std::string& path, Parse parse) {
  const auto value = parse(AsString(node, path));
  if (!value) internal::SchemaFail(path, "unexpected value");
  return *value;
}

TechniqueId ParseTechniqueAt(const Json& node, const std::string& path) {
  auto id = TechniqueId::TryParse(AsString(node, path));
  if (!id) internal::SchemaFail(path, "malformed technique id");
  return *std::move(id);
}

BaseScore ParseScore(ObjectReader& r) {
  return {r.RequiredInt("likelihood"), r.RequiredInt("impact")};
}

Provenance ParseProvenance(const Json& node, const std::string& path) {
  const auto& s = AsString(node, path);
  if (s == "FromBase") return Provenance::kFromBase;
  if (s == "Tailored") return Provenance::kTailored;
  internal::SchemaFail(path, "expected FromBase or Tailored");
}

std::set<TechniqueId> ParseIdSet(const Json& node, const std::string& path) {
  std::set<TechniqueId> out;
  const auto& list = AsArray(node, path);
  for (size_t k = 0; k < list.size(); ++k) out.insert(ParseTechniqueAt(list[k], ChildPath(path, k)));
  return out;
}

Report FromJson(const Json& doc) {
  ObjectReader root(doc, "");
  internal::RequireSchemaVersion(root);
  Report report;
  {
    ObjectReader m(root.Required("metadata"), root.PathOf("metadata"));
    auto& meta = report.metadata;
    meta.tool_version = m.RequiredString("tool_version");
    const Json& ts = m.Required("timestamp");
    if (!ts.is_null()) meta.timestamp = AsString(ts, m.PathOf("timestamp"));
    ObjectReader inputs(m.Required("inputs"), m.PathOf("inputs"));
    for (auto [key, ref] : {std::pair{"catalog", &meta.catalog},
                            std::pair{"mission", &meta.mission},
                            std::pair{"assessment", &meta.assessment}}) {
      ObjectReader ir(inputs.Required(key), inputs.PathOf(key));
      *ref = {ir.RequiredString("name"), ir.RequiredString("sha256")};
      ir.Finish();
    }
    inputs.Finish();
    meta.adversary_tier = m.RequiredInt("adversary_tier");
    meta.threshold = ParseEnum<Band>(m.Required("threshold"), m.PathOf("threshold"), ParseBand);
    meta.strategy = ParseEnum<Strategy>(m.Required("strategy"), m.PathOf("strategy"), ParseStrategy);
    m.Finish();
  }
  {
    ObjectReader mr(root.Required("risk_matrix"), root.PathOf("risk_matrix"));
    const auto rows_path = mr.PathOf("cells");
    const auto& rows = AsArray(mr.Required("cells"), rows_path);
    if (rows.size() != RiskMatrix::kSize) internal::SchemaFail(rows_path, "expected 5 rows");
    RiskMatrix::Cells cells{};
    for (size_t l = 0; l < rows.size(); ++l) {
      const auto& row = AsArray(rows[l], ChildPath(rows_path, l));
      if (row.size() != RiskMatrix::kSize) internal::SchemaFail(ChildPath(rows_path, l), "expected 5 cells");
      for (size_t i = 0; i < row.size(); ++i) cells[l][i] = AsInt(row[i], ChildPath(ChildPath(rows_path, l), i));
    }
    ObjectReader br(mr.Required("bands"), mr.PathOf("bands"));
    RiskMatrix::Bands bands{};
    for (Band b : {Band::kLow, Band::kMedium, Band::kHigh}) {
      const auto name = BandName(b);
      const auto& pair = AsArray(br.Required(name), br.PathOf(name));
      if (pair.size() != 2) internal::SchemaFail(br.PathOf(name), "expected [low, high]");
      bands[static_cast<int>(b)] = {AsInt(pair[0], br.PathOf(name)), AsInt(pair[1], br.PathOf(name))};
    }
    br.Finish();
    mr.Finish();
    report.matrix = RiskMatrix::Create(cells, bands);
  }
  auto& r = report.result;
  {
    const auto path = root.PathOf("scored");
    const auto& list = AsArray(root.Required("scored"), path);
    for (size_t k = 0; k < list.size(); ++k) {
      ObjectReader sr(list[k], ChildPath(path, k));
      auto id = ParseTechniqueAt(sr.Required("technique"), sr.PathOf("technique"));
      auto impacted = UnitId::Parse(AsString(sr.Required("impacted"), sr.PathOf("impacted")));
      const auto criticality = ParseEnum<Criticality>(
          sr.Required("criticality"), sr.PathOf("criticality"), ParseCriticality);
      std::optional<BaseScore> base;
      if (const Json& node = sr.Required("base"); !node.is_null()) {
        ObjectReader b(node, sr.PathOf("base"));
        base = ParseScore(b);
        b.Finish();
      }
      ObjectReader f(sr.Required("final"), sr.PathOf("final"));
      const auto score = ParseScore(f);
      const TailoredScore final{
          score.likelihood, score.impact,
          ParseProvenance(f.Required("likelihood_from"), f.PathOf("likelihood_from")),
          ParseProvenance(f.Required("impact_from"), f.PathOf("impact_from"))};
      f.Finish();
      const int value = sr.RequiredInt("matrix_value");
      const auto band = ParseEnum<Band>(sr.Required("band"), sr.PathOf("band"), ParseBand);
      sr.Finish();
      ScoredTechnique s{std::move(id), std::move(impacted), criticality, base, final, value, band};
      r.scored.push_back(std::move(s));
    }
  }
  r.intolerable = ParseIdSet(root.Required("intolerable"), root.PathOf("intolerable"));
  r.unmitigable = ParseIdSet(root.Required("unmitigable"), root.PathOf("unmitigable"));
  {
    const auto path = root.PathOf("selections");
    const Json& node = root.Required("selections");
    if (!node.is_object()) internal::SchemaFail(path, "expected an object");
    for (const auto& [key, value] : node.items()) {
      ObjectReader sr(value, ChildPath(path, key));
      auto id = TechniqueId::TryParse(key);
      if (!id) internal::SchemaFail(ChildPath(path, key), "malformed technique id");
      Selection sel{AsStringList(sr.Required("countermeasures"), sr.PathOf("countermeasures")),
                    AsStringList(sr.Required("controls"), sr.PathOf("controls"))};
      sr.Finish();
      r.selections.emplace(*id, std::move(sel));
    }
  }
  for (auto& id : AsStringList(root.Required("control_union"), root.PathOf("control_union"))) {
    r.control_union.insert(std::move(id));
  }
  {
    const auto path = root.PathOf("audit_log");
    const auto& list = AsArray(root.Required("audit_log"), path);
    for (size_t k = 0; k < list.size(); ++k) {
      ObjectReader ar(list[k], ChildPath(path, k));
      r.audit_log.push_back({ar.RequiredString("step"), ar.RequiredString("subject"),
                             ar.RequiredString("detail"), ar.RequiredString("justification")});
      ar.Finish();
    }
  }
  root.Finish();
  return report;
}

std::string MdEscape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string Markdown(const Report& report) {
  const auto& m = report.metadata;
  const auto& r = report.result;
  std::ostringstream out;
  out << "# Mission risk assessment: " << m.mission.name << "\n\n";

  out << "## Summary\n\n"
      << "| Item | Value |\n|---|---|\n"
      << "| Catalog | " << MdEscape(m.catalog.name) << " (`" << m.catalog.sha256.substr(0, 12) << "`) |\n"
      << "| Mission | " << MdEscape(m.mission.name) << " (`" << m.mission.sha256.substr(0, 12) << "`) |\n"
      << "| Assessment | " << MdEscape(m.assessment.name) << " (`" << m.assessment.sha256.substr(0, 12) << "`) |\n"
      << "| Adversary tier | " << m.adversary_tier << " |\n"
      << "| Tolerable threshold | " << BandName(m.threshold) << " |\n"
      << "| Mitigation strategy | " << StrategyName(m.strategy) << " |\n"
      << "| Techniques scored | " << r.scored.size() << " |\n"
      << "| Intolerable techniques | " << r.intolerable.size() << " |\n"
      << "| Security controls required | " << r.control_union.size() << " |\n"
      << "| Tool version | " << m.tool_version << " |\n";
  if (m.timestamp) out << "| Generated | " << *m.timestamp << " |\n";
  out << "\n";

  out << "## Risk matrix\n\n"
      << "Rows are likelihood (5 at the top), columns are impact.\n\n"
      << "| Likelihood \\ Impact | 1 | 2 | 3 | 4 | 5 |\n|---|---|---|---|---|---|\n";
  const auto render = BuildMatrixRender(r.scored, report.matrix);
  for (int l = RiskMatrix::kSize; l >= 1; --l) {
    out << "| " << l << " |";
    for (int i = 1; i <= RiskMatrix::kSize; ++i) {
      const auto& cell = render.grid[l - 1][i - 1];
      out << " " << cell.value << " " << BandName(cell.band);
      if (!cell.techniques.empty()) out << " **" << Join(cell.techniques, ", ") << "**";
      out << " |";
    }
    out << "\n";
  }
  out << "\n";

  out << "## Findings\n\n";
  if (r.scored.empty()) {
    out << "No techniques were scored.\n\n";
  } else {
    out << "| Technique | Impacted unit | Criticality | Base (L,I) | Final (L,I) | Value | Band | Status |\n"
        << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& s : r.scored) {
      out << "| " << s.id.str() << " | " << s.impacted.str() << " | "
          << CriticalityName(s.criticality) << " | "
          << (s.base ? "(" + std::to_string(s.base->likelihood) + "," +
                           std::to_string(s.base->impact) + ")"
                     : std::string("none"))
          << " | (" << s.final.likelihood << "," << s.final.impact << ") | " << s.matrix_value
          << " | " << BandName(s.band) << " | "
          << (s.band > m.threshold ? "intolerable" : "tolerated") << " |\n";
    }
    out << "\n";
  }

  out << "## Mitigations\n\n";
  if (r.selections.empty() && r.unmitigable.empty()) out << "No intolerable techniques.\n\n";
  for (const auto& [id, sel] : r.selections) {
    out << "### " << id.str() << "\n\n"
        << "- Countermeasures: " << Join(sel.countermeasures, ", ") << "\n"
        << "- Security controls: " << Join(sel.controls, ", ") << "\n\n";
  }
  for (const auto& id : r.unmitigable) {
    out << "### " << id.str() << "\n\n- Unmitigable: the catalog maps no countermeasure.\n\n";
  }

  out << "## Security controls\n\n";
  if (r.control_union.empty()) out << "None required.\n";
  for (const auto& c : r.control_union) out << "- " << c << "\n";
  out << "\n";

  out << "## Audit log\n\n";
  if (r.audit_log.empty()) out << "Empty.\n";
  int n = 0;
  for (const auto& rec : r.audit_log) {
    out << ++n << ". **" << rec.step << "** " << rec.subject << ": " << rec.detail;
    if (!rec.justification.empty()) out << " (" << rec.justification << ")";
    out << "\n";
  }
  return out.str();
}

}  // namespace

std::string EmitReport(const Report& report, ReportFormat format) {
  if (format == ReportFormat::kStructured) return ToJson(report).dump(2) + "\n";
  return Markdown(report);
}

Report ParseReport(std::string_view text) {
  return FromJson(internal::ParseDocument(text, "report"));
}

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 digest failed");
  }
  std::ostringstream out;
  for (unsigned int k = 0; k < length; ++k) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
  }
  return out.str();
}

}  // namespace mission_risk
