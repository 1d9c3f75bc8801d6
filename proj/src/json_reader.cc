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

#include "json_reader.h"

#include "mission_risk/error.h"

namespace mission_risk::internal {

void SchemaFail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kSchema, (path.empty() ? std::string("/") : path) + ": " + what);
}

Json ParseDocument(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kSchema,
                std::string(what) + " is not valid JSON: " + e.what());
  }
}

std::string ChildPath(const std::string& path, std::string_view key) {
  return path + "/" + std::string(key);
}

std::string ChildPath(const std::string& path, size_t index) {
  return path + "/" + std::to_string(index);
}

const std::string& AsString(const Json& node, const std::string& path) {
  if (!node.is_string()) SchemaFail(path, "expected a string");
  return node.get_ref<const std::string&>();
}

const std::string& AsText(const Json& node, const std::string& path) {
  const auto& s = AsString(node, path);
  if (s.empty()) SchemaFail(path, "must not be empty");
  return s;
}

int AsInt(const Json& node, const std::string& path) {
  if (!node.is_number_integer()) SchemaFail(path, "expected an integer");
  const auto v = node.get<long long>();
  if (v < -1000000 || v > 1000000) SchemaFail(path, "integer out of range");
  return static_cast<int>(v);
}

const Json& AsArray(const Json& node, const std::string& path) {
  if (!node.is_array()) SchemaFail(path, "expected an array");
  return node;
}

std::vector<std::string> AsStringList(const Json& node, const std::string& path) {
  std::vector<std::string> out;
  const auto& arr = AsArray(node, path);
  out.reserve(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    out.push_back(AsText(arr[i], ChildPath(path, i)));
  }
  return out;
}

ObjectReader::ObjectReader(const Json& node, std::string path)
    : node_(node), path_(std::move(path)) {
  if (!node_.is_object()) SchemaFail(path_, "expected an object");
}

const Json& ObjectReader::Required(std::string_view key) {
  const auto it = node_.find(std::string(key));
  if (it == node_.end()) SchemaFail(PathOf(key), "required key is missing");
  seen_.emplace(key);
  return *it;
}

const Json* ObjectReader::Optional(std::string_view key) {
  const auto it = node_.find(std::string(key));
  if (it == node_.end()) return nullptr;
  seen_.emplace(key);
  return &*it;
}

std::string ObjectReader::RequiredString(std::string_view key) {
  return AsString(Required(key), PathOf(key));
}

std::string ObjectReader::RequiredText(std::string_view key) {
  return AsText(Required(key), PathOf(key));
}

std::string ObjectReader::OptionalString(std::string_view key) {
  const Json* node = Optional(key);
  return node ? AsString(*node, PathOf(key)) : std::string();
}

int ObjectReader::RequiredInt(std::string_view key) {
  return AsInt(Required(key), PathOf(key));
}

void ObjectReader::Finish() const {
  for (const auto& [key, value] : node_.items()) {
    if (!seen_.contains(key)) SchemaFail(PathOf(key), "unknown key");
  }
}

void RequireSchemaVersion(ObjectReader& root) {
  const int version = root.RequiredInt("schema");
  if (version != 1) {
    SchemaFail(root.PathOf("schema"),
               "unsupported schema version " + std::to_string(version));
  }
}

}  // namespace mission_risk::internal
