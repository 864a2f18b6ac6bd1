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

#ifndef SDG_TOOLS_SCHEMA_H_
#define SDG_TOOLS_SCHEMA_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "nlohmann/json.hpp"

namespace sdg::cli {

// The published schemas, compiled in from schemas/*.json.
absl::StatusOr<nlohmann::json> LoadSchema(std::string_view file_name);
std::vector<std::string> SchemaNames();

// Validates `instance` against the JSON Schema keywords used by the
// published schemas: type, enum, properties, required,
// additionalProperties, items, minItems, minLength, minimum, maximum,
// exclusiveMinimum, exclusiveMaximum and local "#/$defs/..." references.
// Any other keyword is an error.
absl::Status ValidateJson(const nlohmann::json& instance,
                          const nlohmann::json& schema);

}  // namespace sdg::cli

#endif  // SDG_TOOLS_SCHEMA_H_
