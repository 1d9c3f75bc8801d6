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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "json.hpp"
#include "mission_risk/error.h"
#include "support.h"

namespace mission_risk {
namespace {

using testing::LoadTerra;

TechniqueId T(std::string_view id) { return TechniqueId::Parse(id); }
UnitId U(std::string_view path) { return UnitId::Parse(path); }

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kIo;
}

AssessmentResult RunTerra(const testing::Terra& terra) {
  return RunAssessment(terra.catalog, terra.mission, terra.mission.attack_chains,
                       terra.assessment);
}

TEST(LoadAssessmentTest, TerraFixture) {
  const Assessment a = LoadTerra().assessment;
  EXPECT_EQ(a.mission, "terra");
  EXPECT_EQ(a.adversary_tier, 6);
  EXPECT_EQ(a.threshold, Band::kMedium);
  EXPECT_EQ(a.strategy, Strategy::kExplicit);
  EXPECT_EQ(a.tailorings.at(T("IA-0007")).likelihood, 5);
  EXPECT_FALSE(a.tailorings.at(T("IA-0007")).impact);
  EXPECT_EQ(a.tailorings.at(T("T1133")).impact, 5);
}

TEST(LoadAssessmentTest, IntegrityIssuesAggregated) {
  auto doc = nlohmann::json::parse(testing::ReadText(testing::TerraDir() / "assessment.json"));
  doc["adversary"]["tier"] = 9;
  doc["tailorings"].push_back({{"technique", "T1586"}, {"justification", "nothing"}});
  doc["tailorings"].push_back({{"technique", "EX-0013"}, {"impact", 7}, {"justification", "x"}});
  try {
    LoadAssessment(doc.dump());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIntegrity);
    EXPECT_GE(e.issues().size(), 3u);
  }
}

TEST(LoadAssessmentTest, JustificationRequired) {
  auto doc = nlohmann::json::parse(testing::ReadText(testing::TerraDir() / "assessment.json"));
  doc["threshold"].erase("justification");
  EXPECT_EQ(CodeOf([&] { LoadAssessment(doc.dump()); }), ErrorCode::kSchema);
  doc["threshold"]["justification"] = "";
  EXPECT_EQ(CodeOf([&] { LoadAssessment(doc.dump()); }), ErrorCode::kSchema);
}

TEST(CheckConsistencyTest, TerraIsConsistent) {
  const auto terra = LoadTerra();
  EXPECT_TRUE(CheckConsistency(terra.catalog, terra.mission, terra.mission.attack_chains,
                               terra.assessment)
                  .empty());
}

TEST(CheckConsistencyTest, ReportsEveryMismatch) {
  auto terra = LoadTerra();
  terra.assessment.mission = "aqua";
  terra.assessment.criticalities.insert_or_assign(U("space/bus/reaction_wheels"), CriticalityAssignment{Criticality::kLow, "x"});
  terra.assessment.tailorings.insert_or_assign(T("PER-0001"), Tailoring{3, 3, "not in any chain"});
  EXPECT_EQ(CheckConsistency(terra.catalog, terra.mission, terra.mission.attack_chains,
                             terra.assessment)
                .size(),
            3u);
}

TEST(ApplicableTechniquesTest, Examples) {
  const auto mission = LoadTerra().mission;
  const auto applicable = ApplicableTechniques(mission.attack_chains);
  const std::set<std::pair<TechniqueId, UnitId>> expected{
      {T("IA-0007"), U("ground/mission_control/command")},
      {T("EX-0012.10"), U("space/bus/command_and_data")},
      {T("T1133"), U("ground/remote_terminal/network_access")},
      {T("EX-0013"), U("ground/ground_station/reception")},
      {T("T1586"), U("user/data_processing_center/payload_processing")},
  };
  EXPECT_EQ(applicable, expected);
  EXPECT_TRUE(ApplicableTechniques({}).empty());

  const std::vector<AttackChain> twice{mission.attack_chains[1], mission.attack_chains[1]};
  EXPECT_EQ(ApplicableTechniques(twice).size(), 1u);
}

TEST(CriticalityOfTest, Examples) {
  const auto terra = LoadTerra();
  for (const auto& [id, unit] : terra.mission.inventory.units()) {
    if (id.level() == Level::kModule) {
      EXPECT_EQ(CriticalityOf(terra.assessment, id), Criticality::kHigh) << id.str();
    }
  }
  Assessment a;
  a.criticalities.insert_or_assign(U("space/bus"), CriticalityAssignment{Criticality::kMedium, "x"});
  a.criticalities.insert_or_assign(U("space"), CriticalityAssignment{Criticality::kLow, "x"});
  EXPECT_EQ(CriticalityOf(a, U("space/bus/power")), Criticality::kMedium);
  EXPECT_EQ(CriticalityOf(a, U("space/payload/camera")), Criticality::kLow);
  EXPECT_EQ(CodeOf([&] { CriticalityOf(a, U("ground/ops/x")); }),
            ErrorCode::kUnassignedCriticality);
}

TEST(TailorTest, Examples) {
  const Tailoring likelihood{5, std::nullopt, "x"};
  EXPECT_EQ(Tailor(BaseScore{4, 3}, &likelihood),
            (TailoredScore{5, 3, Provenance::kTailored, Provenance::kFromBase}));
  const Tailoring both{2, 5, "x"};
  EXPECT_EQ(Tailor(std::nullopt, &both),
            (TailoredScore{2, 5, Provenance::kTailored, Provenance::kTailored}));
  EXPECT_EQ(Tailor(BaseScore{3, 3}, nullptr), (TailoredScore{3, 3}));
  const Tailoring impact_only{std::nullopt, 5, "x"};
  EXPECT_EQ(CodeOf([&] { Tailor(std::nullopt, &impact_only); }), ErrorCode::kMissingScore);
  EXPECT_EQ(CodeOf([&] { Tailor(std::nullopt, nullptr); }), ErrorCode::kMissingScore);
  const Tailoring bad{0, std::nullopt, "x"};
  EXPECT_EQ(CodeOf([&] { Tailor(BaseScore{3, 3}, &bad); }), ErrorCode::kRange);
}

TEST(TailorTest, Idempotent) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> axis(1, 5);
  for (int k = 0; k < 200; ++k) {
    const BaseScore base{axis(rng), axis(rng)};
    Tailoring t;
    t.justification = "x";
    if (rng() % 2) t.likelihood = axis(rng);
    if (rng() % 2) t.impact = axis(rng);
    const auto once = Tailor(base, &t);
    const auto twice = Tailor(BaseScore{once.likelihood, once.impact}, &t);
    EXPECT_EQ(once.likelihood, twice.likelihood);
    EXPECT_EQ(once.impact, twice.impact);
  }
}

TEST(PlaceTest, Corners) {
  const RiskMatrix& m = RiskMatrix::Default();
  EXPECT_EQ(Place(m, 1, 1), (Placement{1, Band::kLow}));
  EXPECT_EQ(Place(m, 5, 5), (Placement{25, Band::kHigh}));
}

TEST(PlaceTest, MonotoneInBothAxes) {
  const RiskMatrix& m = RiskMatrix::Default();
  for (int l = 1; l <= 5; ++l) {
    for (int i = 1; i <= 5; ++i) {
      const auto p = Place(m, l, i);
      if (l < 5) {
        EXPECT_LE(p.value, Place(m, l + 1, i).value);
        EXPECT_LE(p.band, Place(m, l + 1, i).band);
      }
      if (i < 5) {
        EXPECT_LE(p.value, Place(m, l, i + 1).value);
        EXPECT_LE(p.band, Place(m, l, i + 1).band);
      }
    }
  }
}

TEST(FilterIntolerableTest, TerraThresholds) {
  const auto terra = LoadTerra();
  const auto scored = RunTerra(terra).scored;
  EXPECT_EQ(FilterIntolerable(scored, Band::kMedium),
            (std::set<TechniqueId>{T("EX-0013"), T("IA-0007"), T("EX-0012.10"), T("T1133")}));
  EXPECT_TRUE(FilterIntolerable(scored, Band::kHigh).empty());
  EXPECT_EQ(FilterIntolerable(scored, Band::kLow).size(), 5u);
}

TEST(SelectMitigationsTest, TerraExplicitChoice) {
  const auto terra = LoadTerra();
  const auto s = SelectMitigations(T("EX-0012.10"), terra.catalog, Strategy::kExplicit,
                                   terra.assessment.explicit_choices);
  EXPECT_EQ(s.countermeasures, std::vector<CountermeasureId>{"CM0039"});
  EXPECT_EQ(s.controls, std::vector<ControlId>{"CM-7"});
}

Catalog ToyCatalog() {
  Catalog c;
  for (const char* id : {"AC-1", "AC-2", "AC-3", "AC-4", "AC-5"}) c.controls[id] = {id, "AC", id};
  c.countermeasures["CMA"] = {"CMA", "a", {"AC-1", "AC-2", "AC-3"}, ""};
  c.countermeasures["CMB"] = {"CMB", "b", {"AC-4", "AC-5"}, ""};
  c.countermeasures["CMC"] = {"CMC", "c", {"AC-1", "AC-5"}, ""};
  c.techniques.insert_or_assign(T("T1000"), Technique{T("T1000"), "toy", "toy", {"CMA", "CMB"}, ""});
  c.techniques.insert_or_assign(T("T1001"), Technique{T("T1001"), "toy", "toy", {"CMC", "CMB"}, ""});
  c.techniques.insert_or_assign(T("T1002"), Technique{T("T1002"), "toy", "toy", {}, ""});
  return c;
}

TEST(SelectMitigationsTest, GreedyPicksSmallestAndBreaksTiesById) {
  const Catalog c = ToyCatalog();
  auto s = SelectMitigations(T("T1000"), c, Strategy::kGreedyMinControls, {});
  EXPECT_EQ(s.countermeasures, std::vector<CountermeasureId>{"CMB"});
  EXPECT_EQ(testing::BruteForceMinControls(c, T("T1000")), 2u);
  s = SelectMitigations(T("T1001"), c, Strategy::kGreedyMinControls, {});
  EXPECT_EQ(s.countermeasures, std::vector<CountermeasureId>{"CMB"});
}

TEST(SelectMitigationsTest, AllTakesEverything) {
  const auto s = SelectMitigations(T("T1000"), ToyCatalog(), Strategy::kAll, {});
  EXPECT_EQ(s.countermeasures, (std::vector<CountermeasureId>{"CMA", "CMB"}));
  EXPECT_EQ(s.controls.size(), 5u);
}

TEST(SelectMitigationsTest, Errors) {
  const Catalog c = ToyCatalog();
  std::map<TechniqueId, ExplicitChoice> choices;
  EXPECT_EQ(CodeOf([&] { SelectMitigations(T("T1000"), c, Strategy::kExplicit, choices); }),
            ErrorCode::kInvalidChoice);
  choices.insert_or_assign(T("T1000"), ExplicitChoice{{"CMC"}, std::nullopt, "not mapped"});
  EXPECT_EQ(CodeOf([&] { SelectMitigations(T("T1000"), c, Strategy::kAll, choices); }),
            ErrorCode::kInvalidChoice);
  choices.insert_or_assign(T("T1000"), ExplicitChoice{{"CMA"}, std::vector<ControlId>{"AC-4"}, "outside"});
  EXPECT_EQ(CodeOf([&] { SelectMitigations(T("T1000"), c, Strategy::kExplicit, choices); }),
            ErrorCode::kInvalidChoice);
  EXPECT_EQ(CodeOf([&] { SelectMitigations(T("T1002"), c, Strategy::kAll, {}); }),
            ErrorCode::kNoCountermeasures);
  EXPECT_EQ(CodeOf([&] { SelectMitigations(T("T1999"), c, Strategy::kAll, {}); }),
            ErrorCode::kUnknownTechnique);
}

TEST(SelectMitigationsTest, GreedyMatchesSubsetOracle) {
  std::mt19937 rng(2024);
  for (int k = 0; k < 200; ++k) {
    const Catalog c = testing::RandomToyCatalog(rng);
    const auto s = SelectMitigations(T("T1000"), c, Strategy::kGreedyMinControls, {});
    ASSERT_EQ(s.countermeasures.size(), 1u);
    EXPECT_EQ(s.controls.size(), testing::BruteForceMinControls(c, T("T1000")));
  }
}

TEST(RunAssessmentTest, TerraEndToEnd) {
  const auto terra = LoadTerra();
  const auto result = RunTerra(terra);
  EXPECT_EQ(result.intolerable,
            (std::set<TechniqueId>{T("EX-0013"), T("IA-0007"), T("EX-0012.10"), T("T1133")}));
  EXPECT_TRUE(result.control_union.contains("CM-7"));
  EXPECT_TRUE(result.unmitigable.empty());
  const auto t1586 = std::find_if(result.scored.begin(), result.scored.end(),
                                  [](const auto& s) { return s.id == T("T1586"); });
  ASSERT_NE(t1586, result.scored.end());
  EXPECT_EQ(t1586->band, Band::kMedium);
  const auto ia = std::find_if(result.scored.begin(), result.scored.end(),
                               [](const auto& s) { return s.id == T("IA-0007"); });
  EXPECT_EQ(ia->final.likelihood, 5);
  EXPECT_EQ(ia->final.likelihood_from, Provenance::kTailored);
}

TEST(RunAssessmentTest, ControlUnionIsUnionOfSelections) {
  const auto result = RunTerra(LoadTerra());
  std::set<ControlId> expected;
  for (const auto& [id, s] : result.selections) expected.insert(s.controls.begin(), s.controls.end());
  EXPECT_EQ(result.control_union, expected);
  for (const auto& id : result.intolerable) EXPECT_TRUE(result.selections.contains(id));
}

TEST(RunAssessmentTest, AuditLogCarriesJustifications) {
  const auto terra = LoadTerra();
  const auto result = RunTerra(terra);
  auto has = [&](std::string_view step, std::string_view justification) {
    return std::any_of(result.audit_log.begin(), result.audit_log.end(), [&](const auto& r) {
      return r.step == step && r.justification == justification;
    });
  };
  EXPECT_TRUE(has("adversary", terra.assessment.adversary_justification));
  EXPECT_TRUE(has("threshold", terra.assessment.threshold_justification));
  EXPECT_TRUE(has("tailor", terra.assessment.tailorings.at(T("T1133")).justification));
  EXPECT_TRUE(has("select", terra.assessment.explicit_choices.at(T("EX-0012.10")).justification));
}

TEST(RunAssessmentTest, EmptyChains) {
  const auto terra = LoadTerra();
  Assessment a = terra.assessment;
  a.tailorings.clear();
  a.explicit_choices.clear();
  a.rationale_notes.clear();
  const auto result = RunAssessment(terra.catalog, terra.mission, {}, a);
  EXPECT_TRUE(result.scored.empty());
  EXPECT_TRUE(result.control_union.empty());
  EXPECT_TRUE(result.intolerable.empty());
}

TEST(RunAssessmentTest, Deterministic) {
  const auto terra = LoadTerra();
  EXPECT_EQ(RunTerra(terra), RunTerra(terra));
}

TEST(RunAssessmentTest, UnmitigableIsAFinding) {
  auto terra = LoadTerra();
  terra.catalog.techniques.at(T("EX-0013")).countermeasures.clear();
  terra.assessment.explicit_choices.erase(T("EX-0013"));
  const auto result = RunTerra(terra);
  EXPECT_EQ(result.unmitigable, std::set<TechniqueId>{T("EX-0013")});
  EXPECT_TRUE(result.intolerable.contains(T("EX-0013")));
}

TEST(RunAssessmentTest, AggregatesFailures) {
  auto terra = LoadTerra();
  terra.assessment.tailorings.erase(T("T1133"));
  terra.assessment.tailorings.erase(T("T1586"));
  try {
    RunTerra(terra);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAssessment);
    EXPECT_EQ(e.issues().size(), 2u);
  }
}

class ThresholdProperties : public ::testing::TestWithParam<int> {};

TEST_P(ThresholdProperties, IntolerableShrinksAsThresholdRises) {
  std::mt19937 rng(GetParam());
  auto rc = testing::RandomAssessmentCase(rng);
  std::map<Band, std::set<TechniqueId>> by_threshold;
  for (Band tau : {Band::kLow, Band::kMedium, Band::kHigh}) {
    rc.assessment.threshold = tau;
    const auto result =
        RunAssessment(rc.catalog, rc.mission, rc.mission.attack_chains, rc.assessment);
    by_threshold[tau] = result.intolerable;
    std::set<TechniqueId> oracle;
    for (const auto& s : result.scored) {
      if (RiskMatrix::Default().band(RiskMatrix::Default().value(s.final.likelihood,
                                                                 s.final.impact)) > tau) {
        oracle.insert(s.id);
      }
    }
    EXPECT_EQ(result.intolerable, oracle);
  }
  auto includes = [](const auto& big, const auto& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
  };
  EXPECT_TRUE(includes(by_threshold[Band::kLow], by_threshold[Band::kMedium]));
  EXPECT_TRUE(includes(by_threshold[Band::kMedium], by_threshold[Band::kHigh]));
  EXPECT_TRUE(by_threshold[Band::kHigh].empty());
}

INSTANTIATE_TEST_SUITE_P(Seeds, ThresholdProperties, ::testing::Range(1, 51));

}  // namespace
}  // namespace mission_risk
