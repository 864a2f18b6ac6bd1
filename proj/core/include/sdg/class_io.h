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

#ifndef SDG_CLASS_IO_H_
#define SDG_CLASS_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "sdg/concept_class.h"

namespace sdg {

// Text format: a header line "n k" followed by k lines of n characters
// from {0,1}. Blank lines and lines starting with '#' are skipped.
absl::StatusOr<ConceptClass> ParseClass(std::string_view text);
absl::StatusOr<ConceptClass> LoadClassFile(const std::string& path);
std::string FormatClass(const ConceptClass& c);

// Whitespace-separated non-negative decimals on one line.
absl::StatusOr<std::vector<double>> ParseWeights(std::string_view text);
absl::StatusOr<std::vector<double>> LoadWeightsFile(const std::string& path);

}  // namespace sdg

#endif  // SDG_CLASS_IO_H_
