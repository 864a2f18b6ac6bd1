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

#ifndef SDG_CONCEPT_CLASS_H_
#define SDG_CONCEPT_CLASS_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace sdg {

// A finite set of indexed points, optionally with names.
class Domain {
 public:
  static absl::StatusOr<Domain> Create(size_t size,
                                       std::vector<std::string> labels = {});

  size_t size() const { return size_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool has_labels() const { return !labels_.empty(); }

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  Domain(size_t size, std::vector<std::string> labels)
      : size_(size), labels_(std::move(labels)) {}

  size_t size_;
  std::vector<std::string> labels_;
};

// A boolean function on a Domain, stored as one byte per point.
class Hypothesis {
 public:
  Hypothesis() = default;
  explicit Hypothesis(std::vector<uint8_t> bits);

  // Parses a string over {0,1}.
  static absl::StatusOr<Hypothesis> FromString(std::string_view bits);

  size_t size() const { return bits_.size(); }
  bool operator[](size_t point) const { return bits_[point] != 0; }
  std::span<const uint8_t> bits() const { return bits_; }
  size_t CountOnes() const;

  Hypothesis Complement() const;
  std::string ToString() const;

  // Lexicographic on the bit string.
  friend auto operator<=>(const Hypothesis&, const Hypothesis&) = default;

 private:
  std::vector<uint8_t> bits_;
};

// A duplicate-free, lexicographically sorted list of hypotheses over a
// Domain. Structurally equal classes compare equal. Restriction may produce
// an empty class; every other constructor rejects one.
class ConceptClass {
 public:
  // Validates lengths, removes duplicates and sorts the rows.
  static absl::StatusOr<ConceptClass> Create(Domain domain,
                                             std::vector<Hypothesis> rows);
  static absl::StatusOr<ConceptClass> Create(size_t num_points,
                                             std::vector<Hypothesis> rows);

  const Domain& domain() const { return domain_; }
  size_t num_points() const { return domain_.size(); }
  size_t num_rows() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  const std::vector<Hypothesis>& rows() const { return rows_; }
  const Hypothesis& row(size_t i) const { return rows_[i]; }
  bool at(size_t row, size_t point) const { return rows_[row][point]; }

  std::optional<size_t> IndexOf(const Hypothesis& h) const;
  // Index of the complement of row i, if present.
  std::optional<size_t> ComplementIndex(size_t i) const;
  bool IsSymmetric() const;

  // Stable 64-bit hash of the canonical table.
  uint64_t Fingerprint() const;

  friend bool operator==(const ConceptClass& a, const ConceptClass& b) {
    return a.domain_.size() == b.domain_.size() && a.rows_ == b.rows_;
  }

 private:
  ConceptClass(Domain domain, std::vector<Hypothesis> rows)
      : domain_(std::move(domain)), rows_(std::move(rows)) {}

  static std::vector<Hypothesis> Canonicalize(std::vector<Hypothesis> rows);

  Domain domain_;
  std::vector<Hypothesis> rows_;

  friend ConceptClass Restrict(const ConceptClass&, size_t, bool);
  friend struct DualView DualizeWithMap(const ConceptClass&);
};

// Closes the class under complement: rows ∪ (1 − rows).
ConceptClass Symmetrize(const ConceptClass& c);

// The dual class: one row per distinct column of `c`, evaluated over the
// rows of `c`. Points with identical columns collapse.
ConceptClass Dualize(const ConceptClass& c);

// Dual class together with, for each dual row, the lowest point index of
// `c` whose column it is.
struct DualView {
  ConceptClass dual;
  std::vector<size_t> representative_point;
};
DualView DualizeWithMap(const ConceptClass& c);

// Rows h with h(point) == label. The result may be empty. `point` must be
// in range.
ConceptClass Restrict(const ConceptClass& c, size_t point, bool label);

// Dense bitset over the rows of a fixed class, used as a version space.
class RowSet {
 public:
  RowSet() = default;
  explicit RowSet(size_t n, bool fill = false);

  size_t universe() const { return n_; }
  bool test(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  void reset(size_t i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  size_t count() const;
  bool none() const;
  // Lowest member, or universe() if empty.
  size_t first() const;

  RowSet operator&(const RowSet& o) const;
  RowSet& operator&=(const RowSet& o);

  const std::vector<uint64_t>& words() const { return words_; }

  friend bool operator==(const RowSet&, const RowSet&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const RowSet& s) {
    return H::combine(std::move(h), s.n_, s.words_);
  }

 private:
  size_t n_ = 0;
  std::vector<uint64_t> words_;
};

// Per-point row masks of a class: ones[p] holds rows with h(p) = 1 and
// zeros[p] its complement within the class.
struct ColumnMasks {
  std::vector<RowSet> ones;
  std::vector<RowSet> zeros;
};
ColumnMasks BuildColumnMasks(const ConceptClass& c);

}  // namespace sdg

#endif  // SDG_CONCEPT_CLASS_H_
