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

#include "sdg/concept_class.h"

#include <algorithm>
#include <bit>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "sdg/random.h"

namespace sdg {

absl::StatusOr<Domain> Domain::Create(size_t size,
                                      std::vector<std::string> labels) {
  if (size == 0) {
    return absl::InvalidArgumentError("domain size must be at least 1");
  }
  if (!labels.empty() && labels.size() != size) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "domain has %d points but %d labels", size, labels.size()));
  }
  return Domain(size, std::move(labels));
}

Hypothesis::Hypothesis(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

absl::StatusOr<Hypothesis> Hypothesis::FromString(std::string_view bits) {
  std::vector<uint8_t> out;
  out.reserve(bits.size());
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      return absl::InvalidArgumentError(
          absl::StrFormat("invalid bit character '%c'", ch));
    }
    out.push_back(ch == '1');
  }
  return Hypothesis(std::move(out));
}

size_t Hypothesis::CountOnes() const {
  return static_cast<size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

Hypothesis Hypothesis::Complement() const {
  std::vector<uint8_t> out(bits_.size());
  for (size_t i = 0; i < bits_.size(); ++i) out[i] = bits_[i] ? 0 : 1;
  return Hypothesis(std::move(out));
}

std::string Hypothesis::ToString() const {
  std::string s(bits_.size(), '0');
  for (size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

std::vector<Hypothesis> ConceptClass::Canonicalize(
    std::vector<Hypothesis> rows) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

absl::StatusOr<ConceptClass> ConceptClass::Create(
    Domain domain, std::vector<Hypothesis> rows) {
  if (rows.empty()) return absl::InvalidArgumentError("empty class");
  for (const auto& h : rows) {
    if (h.size() != domain.size()) {
      return absl::InvalidArgumentError(
          absl::StrFormat("hypothesis of length %d over a domain of size %d",
                          h.size(), domain.size()));
    }
  }
  return ConceptClass(std::move(domain), Canonicalize(std::move(rows)));
}

absl::StatusOr<ConceptClass> ConceptClass::Create(
    size_t num_points, std::vector<Hypothesis> rows) {
  auto domain = Domain::Create(num_points);
  if (!domain.ok()) return domain.status();
  return Create(*std::move(domain), std::move(rows));
}

std::optional<size_t> ConceptClass::IndexOf(const Hypothesis& h) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), h);
  if (it == rows_.end() || *it != h) return std::nullopt;
  return static_cast<size_t>(it - rows_.begin());
}

std::optional<size_t> ConceptClass::ComplementIndex(size_t i) const {
  return IndexOf(rows_[i].Complement());
}

bool ConceptClass::IsSymmetric() const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    if (!ComplementIndex(i).has_value()) return false;
  }
  return true;
}

uint64_t ConceptClass::Fingerprint() const {
  std::string buf = absl::StrFormat("%d:%d;", num_points(), num_rows());
  for (const auto& h : rows_) {
    buf += h.ToString();
    buf += ';';
  }
  return Fnv1a64(buf);
}

ConceptClass Symmetrize(const ConceptClass& c) {
  std::vector<Hypothesis> rows = c.rows();
  rows.reserve(2 * rows.size());
  for (const auto& h : c.rows()) rows.push_back(h.Complement());
  // Nonempty and length-consistent by construction.
  return *ConceptClass::Create(c.domain(), std::move(rows));
}

DualView DualizeWithMap(const ConceptClass& c) {
  const size_t n = c.num_points();
  const size_t k = c.num_rows();
  std::vector<std::pair<Hypothesis, size_t>> columns;
  columns.reserve(n);
  for (size_t p = 0; p < n; ++p) {
    std::vector<uint8_t> bits(k);
    for (size_t r = 0; r < k; ++r) bits[r] = c.at(r, p);
    columns.emplace_back(Hypothesis(std::move(bits)), p);
  }
  // Sorting pairs keeps the lowest point index first among equal columns.
  std::sort(columns.begin(), columns.end());
  std::vector<size_t> representatives;
  std::vector<Hypothesis> rows;
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i > 0 && columns[i].first == columns[i - 1].first) continue;
    rows.push_back(columns[i].first);
    representatives.push_back(columns[i].second);
  }
  return DualView{.dual = ConceptClass(*Domain::Create(k), std::move(rows)),
                  .representative_point = std::move(representatives)};
}

ConceptClass Dualize(const ConceptClass& c) { return DualizeWithMap(c).dual; }

ConceptClass Restrict(const ConceptClass& c, size_t point, bool label) {
  std::vector<Hypothesis> rows;
  for (const auto& h : c.rows()) {
    if (h[point] == label) rows.push_back(h);
  }
  // Rows stay sorted and unique.
  return ConceptClass(c.domain(), std::move(rows));
}

RowSet::RowSet(size_t n, bool fill) : n_(n), words_((n + 63) / 64, 0) {
  if (fill) {
    for (size_t i = 0; i < n; ++i) set(i);
  }
}

size_t RowSet::count() const {
  size_t total = 0;
  for (uint64_t w : words_) total += static_cast<size_t>(std::popcount(w));
  return total;
}

bool RowSet::none() const {
  for (uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

size_t RowSet::first() const {
  for (size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] != 0) {
      return i * 64 + static_cast<size_t>(std::countr_zero(words_[i]));
    }
  }
  return n_;
}

RowSet RowSet::operator&(const RowSet& o) const {
  RowSet out = *this;
  out &= o;
  return out;
}

RowSet& RowSet::operator&=(const RowSet& o) {
  for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

ColumnMasks BuildColumnMasks(const ConceptClass& c) {
  ColumnMasks masks;
  masks.ones.assign(c.num_points(), RowSet(c.num_rows()));
  masks.zeros.assign(c.num_points(), RowSet(c.num_rows()));
  for (size_t r = 0; r < c.num_rows(); ++r) {
    for (size_t p = 0; p < c.num_points(); ++p) {
      if (c.at(r, p)) {
        masks.ones[p].set(r);
      } else {
        masks.zeros[p].set(r);
      }
    }
  }
  return masks;
}

}  // namespace sdg
