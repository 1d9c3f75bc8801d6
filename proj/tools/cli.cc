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

#include "cli.h"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mission_risk/catalog.h"
#include "mission_risk/error.h"
#include "mission_risk/mission_graph.h"
#include "mission_risk/reporting.h"
#include "mission_risk/risk_engine.h"

namespace mission_risk::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string catalog;
  std::string mission;
  std::string assessment;
  std::string report;
  std::string out;
  std::string technique;
  std::string format = "text";
  bool fail_on_findings = false;
  bool verbose = false;
};

struct Source {
  std::string bytes;
  InputRef ref;
};

Source ReadSource(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || fs::is_directory(path)) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  Source source;
  source.bytes = buffer.str();
  source.ref = {fs::path(path).filename().string(), Sha256Hex(source.bytes)};
  return source;
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

std::string Paint(const Console& console, std::string_view code, std::string_view text) {
  if (!console.color) return std::string(text);
  return "\x1b[" + std::string(code) + "m" + std::string(text) + "\x1b[0m";
}

int StatusFor(const Error& e) {
  return e.code() == ErrorCode::kIo ? kExitIo : kExitValidation;
}

void Diagnose(const Console& console, const std::string& context, const Error& e) {
  console.err << Paint(console, "31", "error") << ": ";
  if (!context.empty()) console.err << context << ": ";
  console.err << e.what() << "\n";
  for (const auto& issue : e.issues()) console.err << "  - " << issue << "\n";
}

// Errors outrank findings; I/O outranks validation.
int Worst(int a, int b) {
  auto rank = [](int s) { return s == kExitIo ? 3 : s == kExitValidation ? 2 : s == kExitFindings ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

std::optional<MatrixFormat> ParseFormat(const std::string& text) {
  if (text == "text") return MatrixFormat::kText;
  if (text == "svg") return MatrixFormat::kSvg;
  return std::nullopt;
}

std::optional<std::string> TimestampFromEnvironment() {
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  if (epoch == nullptr || *epoch == '\0') return std::nullopt;
  char* end = nullptr;
  const long long seconds = std::strtoll(epoch, &end, 10);
  if (*end != '\0' || seconds < 0) return std::nullopt;
  const std::time_t t = static_cast<std::time_t>(seconds);
  std::tm utc{};
  gmtime_r(&t, &utc);
  char text[32];
  std::strftime(text, sizeof text, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return std::string(text);
}

// ---------------------------------------------------------------------------
// validate

int CmdValidate(const Options& opt, const Console& console) {
  if (opt.catalog.empty() && opt.mission.empty() && opt.assessment.empty()) {
    console.err << "error: validate needs at least one of --catalog, --mission, --assessment\n";
    return kExitValidation;
  }
  int status = kExitOk;
  std::optional<Catalog> catalog;
  std::optional<MissionSpec> mission;
  std::optional<Assessment> assessment;
  std::vector<std::string> summary;

  auto attempt = [&](const std::string& path, auto load) {
    if (path.empty()) return;
    try {
      load(ReadSource(path).bytes);
    } catch (const Error& e) {
      Diagnose(console, path, e);
      status = Worst(status, StatusFor(e));
    }
  };
  attempt(opt.catalog, [&](const std::string& text) {
    catalog = LoadCatalog(text);
    summary.push_back("catalog " + catalog->name + ": " +
                      std::to_string(catalog->techniques.size()) + " techniques, " +
                      std::to_string(catalog->countermeasures.size()) + " countermeasures, " +
                      std::to_string(catalog->controls.size()) + " controls");
  });
  attempt(opt.mission, [&](const std::string& text) {
    mission = LoadMission(text);
    const auto graph = mission->graph();
    summary.push_back("mission " + mission->name + ": " + std::to_string(graph.nodes.size()) +
                      " units in flows, " + std::to_string(graph.arcs.size()) + " arcs, " +
                      std::to_string(mission->attack_chains.size()) + " attack chains");
  });
  attempt(opt.assessment, [&](const std::string& text) {
    assessment = LoadAssessment(text);
    summary.push_back("assessment for " + assessment->mission + ": tier " +
                      std::to_string(assessment->adversary_tier) + ", threshold " +
                      std::string(BandName(assessment->threshold)));
  });

  if (status == kExitOk && catalog && mission && assessment) {
    const auto problems = CheckConsistency(*catalog, *mission, mission->attack_chains, *assessment);
    if (!problems.empty()) {
      Diagnose(console, "", Error(ErrorCode::kIntegrity, "inputs are inconsistent", problems));
      status = kExitValidation;
    } else {
      try {
        RunAssessment(*catalog, *mission, mission->attack_chains, *assessment);
      } catch (const Error& e) {
        Diagnose(console, "", e);
        status = kExitValidation;
      }
    }
  } else if (status == kExitOk && catalog && mission) {
    for (const auto& chain : mission->attack_chains) {
      for (const auto& step : chain.steps) {
        if (!catalog->techniques.contains(step.technique)) {
          Diagnose(console, "", Error(ErrorCode::kUnknownTechnique,
                                    "attack chain names " + step.technique.str() +
                                        " which is not in the catalog"));
          status = kExitValidation;
        }
      }
    }
  }

  if (status != kExitOk) return status;
  console.out << Paint(console, "32", "OK") << "\n";
  for (const auto& line : summary) console.out << "  " << line << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// assess

struct Shared {
  Catalog catalog;
  Source catalog_source;
  MissionSpec mission;
  Source mission_source;
  MatrixFormat format = MatrixFormat::kText;
  std::optional<std::string> timestamp;
  bool fail_on_findings = false;
  bool verbose = false;
};

struct JobOutput {
  int status = kExitOk;
  std::ostringstream out;
  std::ostringstream err;
};

void AssessOne(const Shared& shared, const fs::path& assessment_path, const fs::path& out_dir,
               bool color, JobOutput& job) {
  Console console{job.out, job.err, color};
  try {
    const Source source = ReadSource(assessment_path.string());
    const Assessment assessment = LoadAssessment(source.bytes);
    const auto& chains = shared.mission.attack_chains;
    const auto problems = CheckConsistency(shared.catalog, shared.mission, chains, assessment);
    if (!problems.empty()) {
      throw Error(ErrorCode::kIntegrity, "inputs are inconsistent", problems);
    }

    Report report;
    report.metadata.timestamp = shared.timestamp;
    report.metadata.catalog = shared.catalog_source.ref;
    report.metadata.mission = shared.mission_source.ref;
    report.metadata.assessment = source.ref;
    report.metadata.adversary_tier = assessment.adversary_tier;
    report.metadata.threshold = assessment.threshold;
    report.metadata.strategy = assessment.strategy;
    report.matrix = shared.catalog.matrix;
    report.result = RunAssessment(shared.catalog, shared.mission, chains, assessment);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create " + out_dir.string() + ": " + ec.message());

    const bool svg = shared.format == MatrixFormat::kSvg;
    WriteFile(out_dir / "report.json", EmitReport(report, ReportFormat::kStructured));
    WriteFile(out_dir / "report.md", EmitReport(report, ReportFormat::kMarkdown));
    WriteFile(out_dir / (svg ? "matrix.svg" : "matrix.txt"),
              RenderMatrix(report.result.scored, report.matrix, shared.format));
    WriteFile(out_dir / "mission.dot",
              ExportDot(shared.mission.graph(), chains, shared.mission.attack_flows,
                        shared.mission.inventory));

    const auto& result = report.result;
    if (shared.verbose) {
      for (const auto& record : result.audit_log) {
        job.err << "[" << record.step << "] " << record.subject << ": " << record.detail << "\n";
      }
    }
    job.out << source.ref.name << ": " << result.scored.size() << " scored, "
            << result.intolerable.size() << " intolerable, " << result.control_union.size()
            << " controls selected\n";
    for (const auto& id : result.intolerable) {
      job.out << "  " << Paint(console, "31", "intolerable") << " " << id.str() << "\n";
    }
    for (const auto& id : result.unmitigable) {
      job.out << "  " << Paint(console, "33", "unmitigable") << " " << id.str() << "\n";
    }
    job.out << "  wrote " << out_dir.string() << "\n";
    if (shared.fail_on_findings && !result.intolerable.empty()) job.status = kExitFindings;
  } catch (const Error& e) {
    Diagnose(console, assessment_path.string(), e);
    job.status = StatusFor(e);
  }
}

int CmdAssess(const Options& opt, const Console& console) {
  if (opt.catalog.empty() || opt.mission.empty() || opt.assessment.empty() || opt.out.empty()) {
    console.err << "error: assess needs --catalog, --mission, --assessment and --out\n";
    return kExitValidation;
  }
  Shared shared;
  const auto format = ParseFormat(opt.format);
  if (!format) {
    console.err << "error: unknown --format " << opt.format << " (expected text or svg)\n";
    return kExitValidation;
  }
  shared.format = *format;
  shared.timestamp = TimestampFromEnvironment();
  shared.fail_on_findings = opt.fail_on_findings;
  shared.verbose = opt.verbose;
  try {
    shared.catalog_source = ReadSource(opt.catalog);
    shared.catalog = LoadCatalog(shared.catalog_source.bytes);
  } catch (const Error& e) {
    Diagnose(console, opt.catalog, e);
    return StatusFor(e);
  }
  try {
    shared.mission_source = ReadSource(opt.mission);
    shared.mission = LoadMission(shared.mission_source.bytes);
  } catch (const Error& e) {
    Diagnose(console, opt.mission, e);
    return StatusFor(e);
  }

  const fs::path assessment_path(opt.assessment);
  const fs::path out_dir(opt.out);
  if (!fs::is_directory(assessment_path)) {
    JobOutput job;
    AssessOne(shared, assessment_path, out_dir, console.color, job);
    console.out << job.out.str();
    console.err << job.err.str();
    return job.status;
  }

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(assessment_path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    console.err << "error: no .json assessments in " << assessment_path.string() << "\n";
    return kExitIo;
  }
  std::vector<JobOutput> jobs(files.size());
  std::vector<std::future<void>> pending;
  for (size_t k = 0; k < files.size(); ++k) {
    pending.push_back(std::async(std::launch::async, AssessOne, std::cref(shared), files[k],
                                 out_dir / files[k].stem(), console.color, std::ref(jobs[k])));
  }
  int status = kExitOk;
  for (size_t k = 0; k < files.size(); ++k) {
    pending[k].get();
    console.out << jobs[k].out.str();
    console.err << jobs[k].err.str();
    status = Worst(status, jobs[k].status);
  }
  return status;
}

// ---------------------------------------------------------------------------
// render

int CmdRender(const Options& opt, const Console& console) {
  if (opt.report.empty() == opt.mission.empty()) {
    console.err << "error: render needs exactly one of --report or --mission\n";
    return kExitValidation;
  }
  const auto format = ParseFormat(opt.format);
  if (!format) {
    console.err << "error: unknown --format " << opt.format << " (expected text or svg)\n";
    return kExitValidation;
  }
  const std::string& path = opt.report.empty() ? opt.mission : opt.report;
  try {
    const Source source = ReadSource(path);
    if (!opt.report.empty()) {
      const auto report = ParseReport(source.bytes);
      console.out << RenderMatrix(report.result.scored, report.matrix, *format);
    } else {
      const auto mission = LoadMission(source.bytes);
      console.out << ExportDot(mission.graph(), mission.attack_chains, mission.attack_flows,
                               mission.inventory);
    }
  } catch (const Error& e) {
    Diagnose(console, path, e);
    return StatusFor(e);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// explain

int CmdExplain(const Options& opt, const Console& console) {
  if (opt.catalog.empty() || opt.technique.empty()) {
    console.err << "error: explain needs --catalog and --technique\n";
    return kExitValidation;
  }
  try {
    const Catalog catalog = LoadCatalog(ReadSource(opt.catalog).bytes);
    const auto id = TechniqueId::TryParse(opt.technique);
    if (!id || !catalog.techniques.contains(*id)) {
      throw Error(ErrorCode::kUnknownTechnique, opt.technique + " is not in the catalog");
    }
    const Technique& technique = catalog.techniques.at(*id);
    const auto countermeasures = CountermeasuresFor(catalog, *id);
    std::set<ControlId> distinct;
    std::vector<std::vector<SecurityControl>> resolved;
    for (const auto& cm : countermeasures) {
      resolved.push_back(ResolveControls(catalog, cm.id));
      for (const auto& c : resolved.back()) distinct.insert(c.id);
    }

    auto& out = console.out;
    out << Paint(console, "1", id->str()) << " " << technique.name << " ["
        << FrameworkName(id->framework()) << ", " << technique.tactic << "]\n";
    out << "countermeasures: " << countermeasures.size() << "\n";
    out << "distinct controls: " << distinct.size() << "\n";
    for (size_t k = 0; k < countermeasures.size(); ++k) {
      const bool last_cm = k + 1 == countermeasures.size();
      out << (last_cm ? "`-- " : "|-- ") << Paint(console, "1", countermeasures[k].id) << " ("
          << resolved[k].size() << " controls) " << countermeasures[k].description << "\n";
      for (size_t j = 0; j < resolved[k].size(); ++j) {
        const bool last = j + 1 == resolved[k].size();
        out << (last_cm ? "    " : "|   ") << (last ? "`-- " : "|-- ") << resolved[k][j].id
            << " " << resolved[k][j].title << "\n";
      }
    }
  } catch (const Error& e) {
    Diagnose(console, "", e);
    return StatusFor(e);
  }
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, Console console) {
  CLI::App app{"Mission-centric cyber risk assessment for space systems", "mission-risk"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  Options opt;

  auto* validate = app.add_subcommand("validate", "Check catalog, mission and assessment files");
  validate->add_option("--catalog", opt.catalog, "Catalog JSON");
  validate->add_option("--mission", opt.mission, "Mission JSON");
  validate->add_option("--assessment", opt.assessment, "Assessment JSON");

  auto* assess = app.add_subcommand("assess", "Run an assessment and write the report artifacts");
  assess->add_option("--catalog", opt.catalog, "Catalog JSON")->required();
  assess->add_option("--mission", opt.mission, "Mission JSON")->required();
  assess->add_option("--assessment", opt.assessment, "Assessment JSON or a directory of them")
      ->required();
  assess->add_option("--out", opt.out, "Output directory")->required();
  assess->add_option("--format", opt.format, "Matrix render format: text or svg");
  assess->add_flag("--fail-on-findings", opt.fail_on_findings,
                   "Exit with status 3 when any technique is intolerable");
  assess->add_flag("--verbose", opt.verbose, "Print the audit log to stderr");

  auto* render = app.add_subcommand("render", "Render a report matrix or a mission graph");
  render->add_option("--report", opt.report, "report.json to render as a matrix");
  render->add_option("--mission", opt.mission, "Mission JSON to render as DOT");
  render->add_option("--format", opt.format, "Matrix render format: text or svg");

  auto* explain = app.add_subcommand("explain", "Show the countermeasures and controls of a technique");
  explain->add_option("--catalog", opt.catalog, "Catalog JSON")->required();
  explain->add_option("--technique", opt.technique, "Technique id")->required();

  std::vector<const char*> argv{"mission-risk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, console.out, console.err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, console.out, console.err);
    return kExitValidation;
  }

  if (validate->parsed()) return CmdValidate(opt, console);
  if (assess->parsed()) return CmdAssess(opt, console);
  if (render->parsed()) return CmdRender(opt, console);
  return CmdExplain(opt, console);
}

}  // namespace mission_risk::cli
