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

#ifndef MISSION_RISK_CATALOG_H_
#define MISSION_RISK_CATALOG_H_

#include <array>
#include <compare>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mission_risk {

enum class Framework { kSparta, kAttack };

std::string_view FrameworkName(Framework framework);
std::optional<Framework> ParseFramework(std::string_view name);

// A SPARTA (e.g. "EX-0012.10") or ATT&CK (e.g. "T1133") technique id.
// The framework is implied by the id pattern; construction validates it.
class TechniqueId {
 public:
  // Throws Error(kSchema) if `id` matches neither framework pattern.
  static TechniqueId Parse(std::string_view id);
  static std::optional<TechniqueId> TryParse(std::string_view id);

  Framework framework() const { return framework_; }
  const std::string& str() const { return id_; }

  bool is_subtechnique() const;
  // Parent technique of a sub-technique ("EX-0012.10" -> "EX-0012").
  std::optional<TechniqueId> parent() const;

  friend bool operator==(const TechniqueId&, const TechniqueId&) = default;
  friend auto operator<=>(const TechniqueId& a, const TechniqueId& b) {
    return a.id_ <=> b.id_;
  }

 private:
  TechniqueId(Framework framework, std::string id)
      : framework_(framework), id_(std::move(id)) {}

  Framework framework_;
  std::string id_;
};

using CountermeasureId = std::string;
using ControlId = std::string;

enum class Criticality { kLow, kMedium, kHigh };

std::string_view CriticalityName(Criticality criticality);
std::optional<Criticality> ParseCriticality(std::string_view name);

enum class Band { kLow, kMedium, kHigh };

std::string_view BandName(Band band);
std::optional<Band> ParseBand(std::string_view name);

struct BaseScore {
  int likelihood = 1;
  int impact = 1;

  friend bool operator==(const BaseScore&, const BaseScore&) = default;
};

struct Technique {
  TechniqueId id;
  std::string name;
  std::string tactic;
  std::vector<CountermeasureId> countermeasures;
  std::string note;

  friend bool operator==(const Technique&, const Technique&) = default;
};

struct Countermeasure {
  CountermeasureId id;
  std::string description;
  std::vector<ControlId> controls;
  std::string note;

  friend bool operator==(const Countermeasure&, const Countermeasure&) = default;
};

struct SecurityControl {
  ControlId id;
  std::string family;
  std::string title;

  friend bool operator==(const SecurityControl&, const SecurityControl&) = default;
};

struct BaseScoreEntry {
  BaseScore score;
  std::string note;

  friend bool operator==(const BaseScoreEntry&, const BaseScoreEntry&) = default;
};

using BaseScoreTable =
    std::map<std::pair<TechniqueId, Criticality>, BaseScoreEntry>;

struct BandRange {
  int low = 1;
  int high = 1;

  bool contains(int value) const { return value >= low && value <= high; }
  friend bool operator==(const BandRange&, const BandRange&) = default;
};

// 5x5 likelihood x impact lookup. Cell values are data (loaded from the
// catalog), never computed from the coordinates.
class RiskMatrix {
 public:
  static constexpr int kSize = 5;
  // Row index is likelihood - 1, column index is impact - 1.
  using Cells = std::array<std::array<int, kSize>, kSize>;
  using Bands = std::array<BandRange, 3>;  // Low, Medium, High

  static Bands DefaultBands() { return {{{1, 10}, {11, 19}, {20, 25}}}; }

  // Validates range, corner attainment, monotonicity and band partition.
  // Throws Error(kIntegrity) listing every violation.
  static RiskMatrix Create(const Cells& cells, const Bands& bands = DefaultBands());

  // The matrix shipped in data/default_risk_matrix.json.
  static const RiskMatrix& Default();

  int value(int likelihood, int impact) const;
  Band band(int value) const;
  const Cells& cells() const { return cells_; }
  const Bands& bands() const { return bands_; }
  const BandRange& range(Band band) const {
    return bands_[static_cast<int>(band)];
  }

  friend bool operator==(const RiskMatrix&, const RiskMatrix&) = default;

 private:
  RiskMatrix(const Cells& cells, const Bands& bands)
      : cells_(cells), bands_(bands) {}

  Cells cells_;
  Bands bands_;
};

std::vector<std::string> MatrixViolations(const RiskMatrix::Cells& cells,
                                          const RiskMatrix::Bands& bands);

struct AdversaryTier {
  int tier = 1;
  std::string label;

  friend bool operator==(const AdversaryTier&, const AdversaryTier&) = default;
};

// The seven adversary capability tiers in increasing order.
const std::vector<AdversaryTier>& StandardTiers();

struct Catalog {
  std::string name;
  std::string description;
  std::map<TechniqueId, Technique> techniques;
  std::map<CountermeasureId, Countermeasure> countermeasures;
  std::map<ControlId, SecurityControl> controls;
  BaseScoreTable base_scores;
  RiskMatrix matrix = RiskMatrix::Default();
  std::vector<AdversaryTier> tiers = StandardTiers();

  const AdversaryTier* tier(int number) const;

  friend bool operator==(const Catalog&, const Catalog&) = default;
};

// Loads a catalog document. Throws Error(kSchema) for structural problems
// (message carries the JSON path of the offending key) and Error(kIntegrity)
// for referential or value problems (issues() lists all of them).
Catalog LoadCatalog(std::string_view text);
Catalog LoadCatalog(std::istream& in);
Catalog LoadCatalogFile(const std::filesystem::path& path);

// Canonical document form; LoadCatalog(SerializeCatalog(c)) == c.
std::string SerializeCatalog(const Catalog& catalog);

std::optional<BaseScore> LookupBaseScore(const Catalog& catalog,
                                         const TechniqueId& technique,
                                         Criticality criticality);

// Countermeasures in catalog-declared order. Throws kUnknownTechnique.
std::vector<Countermeasure> CountermeasuresFor(const Catalog& catalog,
                                               const TechniqueId& technique);

// Deduplicated controls sorted by id. Throws kUnknownCountermeasure.
std::vector<SecurityControl> ResolveControls(const Catalog& catalog,
                                             const CountermeasureId& countermeasure);

}  // namespace mission_risk

#endif  // MISSION_RISK_CATALOG_H_
