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

#ifndef SDG_RANDOM_H_
#define SDG_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace sdg {

// SplitMix64 finalizer. Used to derive independent seeds.
uint64_t Mix64(uint64_t x);

// FNV-1a over the bytes of `s`.
uint64_t Fnv1a64(std::string_view s);

// Deterministic 64-bit random stream. All sampling in the library goes
// through inverse-CDF transforms of `Uniform()`, so a given seed produces
// bit-identical results on every conforming platform (std::mt19937_64 is
// fully specified by the standard; std distributions are not used).
class Rng {
 public:
  explicit Rng(uint64_t seed);

  // Counter-based derivation: stream `index` of the named family rooted at
  // `seed`. Adding streams never perturbs existing ones.
  static Rng ForStream(uint64_t seed, std::string_view name, uint64_t index);

  // Child stream derived from the next output and `name`.
  Rng Fork(std::string_view name);

  uint64_t NextU64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of resolution.
  double Uniform();

  // Uniform on (0, 1).
  double UniformOpen();

  // Uniform integer in [0, n). n must be positive.
  size_t UniformIndex(size_t n);

  bool Bernoulli(double p) { return Uniform() < p; }

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace sdg

#endif  // SDG_RANDOM_H_
