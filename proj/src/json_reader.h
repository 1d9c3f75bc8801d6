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

#ifndef MISSION_RISK_SRC_JSON_READER_H_
#define MISSION_RISK_SRC_JSON_READER_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace mission_risk::internal {

using Json = nlohmann::json;

[[noreturn]] void SchemaFail(const std::string& path, const std::string& what);

Json ParseDocument(std::string_view text, std::string_view what);

std::string ChildPath(const std::string& path, std::string_view key);
std::string ChildPath(const std::string& path, size_t index);

const std::string& AsString(const Json& node, const std::string& path);
// Non-empty string.
const std::string& AsText(const Json& node, const std::string& path);
int AsInt(const Json& node, const std::string& path);
const Json& AsArray(const Json& node, const std::string& path);
std::vector<std::string> AsStringList(const Json& node, const std::string& path);

// Strict view over a JSON object: every key must be consumed through
// Required/Optional before Finish(), otherwise the unknown key is reported.
class ObjectReader {
 public:
  ObjectReader(const Json& node, std::string path);

  const Json& Required(std::string_view key);
  const Json* Optional(std::string_view key);

  std::string RequiredString(std::string_view key);
  std::string RequiredText(std::string_view key);
  std::string OptionalString(std::string_view key);
  int RequiredInt(std::string_view key);

  std::string PathOf(std::string_view key) const { return ChildPath(path_, key); }
  const std::string& path() const { return path_; }

  void Finish() const;

 private:
  const Json& node_;
  std::string path_;
  std::set<std::string, std::less<>> seen_;
};

// Checks the top-level `"schema": 1` marker.
void RequireSchemaVersion(ObjectReader& root);

}  // namespace mission_risk::internal

#endif  // MISSION_RISK_SRC_JSON_READER_H_
