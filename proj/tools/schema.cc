// Copyright 2026 The sdg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "schema.h"

#include <string>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "embedded_schemas.h"

namespace sdg::cli {
namespace {

using nlohmann::json;

const absl::flat_hash_set<std::string>& KnownKeywords() {
  static const auto* keywords = new absl::flat_hash_set<std::string>{
      "$schema",  "$id",          "$defs",   "$ref",
      "title",    "description",  "type",    "enum",
      "properties", "required",   "additionalProperties",
      "items",    "minItems",     "minLength", "minimum",
      "maximum",  "exclusiveMinimum", "exclusiveMaximum"};
  return *keywords;
}

bool HasType(const json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  if (type == "number") return v.is_number();
  if (type == "integer") {
    if (v.is_number_integer()) return true;
    if (!v.is_number_float()) return false;
    const double d = v.get<double>();
    return d == static_cast<double>(static_cast<long long>(d));
  }
  return false;
}

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  absl::Status Check(const json& v, const json& schema,
                     const std::string& path) const {
    if (!schema.is_object()) {
      return absl::InvalidArgumentError(
          absl::StrCat("schema at ", path, " is not an object"));
    }
    for (const auto& [key, value] : schema.items()) {
      if (!KnownKeywords().contains(key)) {
        return absl::InvalidArgumentError(
            absl::StrCat("unsupported schema keyword '", key, "'"));
      }
    }
    if (auto it = schema.find("$ref"); it != schema.end()) {
      const std::string ref = it->get<std::string>();
      const std::string kPrefix = "#/$defs/";
      if (!absl::StartsWith(ref, kPrefix)) {
        return absl::InvalidArgumentError(
            absl::StrCat("unsupported reference ", ref));
      }
      const std::string name = ref.substr(kPrefix.size());
      if (!root_.contains("$defs") || !root_["$defs"].contains(name)) {
        return absl::InvalidArgumentError(
            absl::StrCat("unresolved reference ", ref));
      }
      return Check(v, root_["$defs"][name], path);
    }
    if (auto it = schema.find("type"); it != schema.end()) {
      bool ok = false;
      if (it->is_array()) {
        for (const auto& t : *it) ok = ok || HasType(v, t.get<std::string>());
      } else {
        ok = HasType(v, it->get<std::string>());
      }
      if (!ok) {
        return absl::InvalidArgumentError(
            absl::StrCat(path, ": expected type ", it->dump()));
      }
    }
    if (auto it = schema.find("enum"); it != schema.end()) {
      bool found = false;
      for (const auto& option : *it) found = found || option == v;
      if (!found) {
        return absl::InvalidArgumentError(absl::StrCat(
            path, ": ", v.dump(), " is not one of ", it->dump()));
      }
    }
    if (v.is_number()) {
      const double d = v.get<double>();
      if (schema.contains("minimum") && d < schema["minimum"].get<double>()) {
        return absl::InvalidArgumentError(absl::StrCat(
            path, ": ", v.dump(), " is below ", schema["minimum"].dump()));
      }
      if (schema.contains("maximum") && d > schema["maximum"].get<double>()) {
        return absl::InvalidArgumentError(absl::StrCat(
            path, ": ", v.dump(), " is above ", schema["maximum"].dump()));
      }
      if (schema.contains("exclusiveMinimum") &&
          d <= schema["exclusiveMinimum"].get<double>()) {
        return absl::InvalidArgumentError(
            absl::StrCat(path, ": ", v.dump(), " must exceed ",
                         schema["exclusiveMinimum"].dump()));
      }
      if (schema.contains("exclusiveMaximum") &&
          d >= schema["exclusiveMaximum"].get<double>()) {
        return absl::InvalidArgumentError(
            absl::StrCat(path, ": ", v.dump(), " must be below ",
                         schema["exclusiveMaximum"].dump()));
      }
    }
    if (v.is_string() && schema.contains("minLength") &&
        v.get<std::string>().size() < schema["minLength"].get<size_t>()) {
      return absl::InvalidArgumentError(absl::StrCat(path, ": too short"));
    }
    if (v.is_array()) {
      if (schema.contains("minItems") &&
          v.size() < schema["minItems"].get<size_t>()) {
        return absl::InvalidArgumentError(
            absl::StrCat(path, ": too few items"));
      }
      if (auto it = schema.find("items"); it != schema.end()) {
        for (size_t i = 0; i < v.size(); ++i) {
          if (auto s = Check(v[i], *it, absl::StrCat(path, "[", i, "]"));
              !s.ok()) {
            return s;
          }
        }
      }
    }
    if (v.is_object()) {
      if (auto it = schema.find("required"); it != schema.end()) {
        for (const auto& key : *it) {
          if (!v.contains(key.get<std::string>())) {
            return absl::InvalidArgumentError(absl::StrCat(
                path, ": missing required key ", key.get<std::string>()));
          }
        }
      }
      const json* properties =
          schema.contains("properties") ? &schema["properties"] : nullptr;
      const json* additional = schema.contains("additionalProperties")
                                   ? &schema["additionalProperties"]
                                   : nullptr;
      for (const auto& [key, value] : v.items()) {
        const std::string child = absl::StrCat(path, ".", key);
        if (properties != nullptr && properties->contains(key)) {
          if (auto s = Check(value, (*properties)[key], child); !s.ok()) {
            return s;
          }
          continue;
        }
        if (additional == nullptr) continue;
        if (additional->is_boolean()) {
          if (!additional->get<bool>()) {
            return absl::InvalidArgumentError(
                absl::StrCat(path, ": unknown key '", key, "'"));
          }
          continue;
        }
        if (auto s = Check(value, *additional, child); !s.ok()) return s;
      }
    }
    return absl::OkStatus();
  }

 private:
  const json& root_;
};

}  // namespace

absl::StatusOr<nlohmann::json> LoadSchema(std::string_view file_name) {
  for (const auto& [name, text] : kEmbeddedSchemas) {
    if (name == file_name) {
      json parsed = json::parse(text, nullptr, /*allow_exceptions=*/false);
      if (parsed.is_discarded()) {
        return absl::InternalError(
            absl::StrCat("embedded schema ", name, " is not valid JSON"));
      }
      return parsed;
    }
  }
  return absl::NotFoundError(
      absl::StrCat("no schema named ", std::string(file_name)));
}

std::vector<std::string> SchemaNames() {
  std::vector<std::string> names;
  for (const auto& [name, text] : kEmbeddedSchemas) {
    names.emplace_back(name);
  }
  return names;
}

absl::Status ValidateJson(const nlohmann::json& instance,
                          const nlohmann::json& schema) {
  return Validator(schema).Check(instance, schema, "$");
}

}  // namespace sdg::cli
