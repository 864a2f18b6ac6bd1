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

#ifndef SDG_CLASS_ZOO_H_
#define SDG_CLASS_ZOO_H_

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "absl/status/statusor.h"
#include "sdg/concept_class.h"

namespace sdg {

enum class ZooName { kCube, kThresholds, kSingletons, kHalfArcs, kRandom };

absl::StatusOr<ZooName> ParseZooName(std::string_view name);
std::string_view ZooNameToString(ZooName name);

// Named constructions over n points:
//   cube        all 2^n functions (n <= 20)
//   thresholds  the n+1 monotone steps x >= i, i = 0..n
//   singletons  the n point indicators
//   half_arcs   the n cyclic intervals of length n/2, symmetrized (n even)
//   random      k distinct uniformly drawn rows; deterministic in `seed`
absl::StatusOr<ConceptClass> MakeZooClass(ZooName name, size_t n,
                                          size_t k = 0, uint64_t seed = 0);

absl::StatusOr<ConceptClass> Cube(size_t n);
absl::StatusOr<ConceptClass> Thresholds(size_t n);
absl::StatusOr<ConceptClass> Singletons(size_t n);
absl::StatusOr<ConceptClass> HalfArcs(size_t n);
absl::StatusOr<ConceptClass> RandomClass(size_t n, size_t k, uint64_t seed);

}  // namespace sdg

#endif  // SDG_CLASS_ZOO_H_
