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

#ifndef SDG_SEQUENTIAL_GAME_H_
#define SDG_SEQUENTIAL_GAME_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "sdg/concept_class.h"
#include "sdg/dimensions.h"
#include "sdg/measures.h"
#include "sdg/online_learning.h"
#include "sdg/random.h"

namespace sdg {

// Slack applied above eps when testing p_real(d) - p_t(d) > eps.
inline constexpr double kWinTolerance = 1e-12;

// ceil((4 l / eps^2) ln(4 l / eps^2)), at least 1.
size_t FoolingHorizon(double eps, int dual_ldim);

struct FoolingParams {
  double eps = 0.0;
  int dual_ldim = 0;
  size_t horizon = 1;

  // Computes the dual Littlestone dimension of `c`.
  static absl::StatusOr<FoolingParams> Create(
      const ConceptClass& c, double eps, const DimensionLimits& limits = {});
  static absl::StatusOr<FoolingParams> Create(double eps, int dual_ldim);
};

struct DiscriminatorReply {
  bool win = true;
  // Row of the symmetric class; meaningful when !win.
  size_t distinguisher = 0;

  static DiscriminatorReply Win() { return {}; }
  static DiscriminatorReply Distinguish(size_t row) {
    return {.win = false, .distinguisher = row};
  }
};

class Discriminator {
 public:
  virtual ~Discriminator() = default;
  virtual DiscriminatorReply Respond(const Distribution& p_t) = 0;
};

enum class Branch { kNone, kIf, kElse };

struct GeneratorMove {
  Distribution submit;
  Branch branch = Branch::kNone;
  // Separating mixture, for the Else branch.
  std::vector<std::pair<size_t, double>> dbar;
};

struct LearnerFeedback {
  bool fed = false;
  DistExample example;
  // f_t extended to the example's mixture.
  double predictor_value = 0.0;
};

class Generator {
 public:
  virtual ~Generator() = default;
  virtual bool exhausted() const = 0;
  virtual absl::StatusOr<GeneratorMove> Propose() = 0;
  // Called with the reply to the move returned by the last Propose(),
  // unless the game has ended.
  virtual absl::StatusOr<LearnerFeedback> Observe(
      const DiscriminatorReply& reply) = 0;
};

// The generator that keeps an online learner for the dual class. Each
// round either submits a mixture p_t with f_t(d) - p_t(d) <= eps/2 for all
// d and feeds (delta_{d_t}, 1) back on a distinguisher, or finds a mixture
// over rows separating f_t from every point by more than eps/2, feeds it
// with label 0 and submits the previous candidate (uniform initially).
// MW learners are proper and skip the game solve.
class FoolingGenerator final : public Generator {
 public:
  static absl::StatusOr<std::unique_ptr<FoolingGenerator>> Create(
      const ConceptClass& c, const FoolingParams& params,
      std::unique_ptr<OnlineLearner> learner);

  bool exhausted() const override {
    return learner_->round() >= learner_->horizon();
  }
  absl::StatusOr<GeneratorMove> Propose() override;
  absl::StatusOr<LearnerFeedback> Observe(
      const DiscriminatorReply& reply) override;

  const OnlineLearner& learner() const { return *learner_; }
  const Distribution& previous() const { return previous_; }

 private:
  FoolingGenerator(const ConceptClass& c, const FoolingParams& params,
                   std::unique_ptr<OnlineLearner> learner);

  const ConceptClass* class_;
  FoolingParams params_;
  std::unique_ptr<OnlineLearner> learner_;
  Distribution previous_;
  std::optional<GeneratorMove> pending_;
  Predictor pending_predictor_;
};

// Builds a learner of the requested kind over params.horizon rounds.
absl::StatusOr<std::unique_ptr<FoolingGenerator>> MakeFoolingGenerator(
    const ConceptClass& c, const FoolingParams& params, LearnerKind kind,
    const AgnosticSoaOptions& options = {});

// Replies Win iff no row has p_real(d) - p_t(d) > eps + kWinTolerance, and
// otherwise the lowest such row.
class HonestDiscriminator final : public Discriminator {
 public:
  HonestDiscriminator(const ConceptClass& c, Distribution p_real, double eps);
  DiscriminatorReply Respond(const Distribution& p_t) override;

 private:
  const ConceptClass* class_;
  Distribution p_real_;
  std::vector<double> real_values_;
  double eps_;
};

// Lower-bound adversary: a depth-l* mistake tree of the dual class, a
// uniformly drawn leaf x with p_real = delta_x, and the path distinguishers
// d_1..d_l* served in order, skipping those within eps of p_real.
class TreeAdversary final : public Discriminator {
 public:
  static absl::StatusOr<std::unique_ptr<TreeAdversary>> Create(
      const ConceptClass& c, double eps, Rng& rng,
      const DimensionLimits& limits = {});

  DiscriminatorReply Respond(const Distribution& p_t) override;

  const Distribution& target() const { return target_; }
  size_t leaf_point() const { return leaf_point_; }
  int depth() const { return static_cast<int>(path_.size()); }
  size_t served() const { return served_; }
  // Rows of the class along the chosen root-to-leaf path, with x(d_i).
  const std::vector<std::pair<size_t, bool>>& path() const { return path_; }

 private:
  TreeAdversary(const ConceptClass& c, double eps,
                std::vector<std::pair<size_t, bool>> path, size_t leaf_point);

  const ConceptClass* class_;
  double eps_;
  std::vector<std::pair<size_t, bool>> path_;
  size_t leaf_point_;
  Distribution target_;
  // Index into path_ of the next candidate.
  size_t next_ = 0;
  size_t served_ = 0;
};

enum class Outcome { kWon, kLost };

struct RoundRecord {
  size_t round = 0;
  Distribution submitted;
  DiscriminatorReply reply;
  Branch branch = Branch::kNone;
  bool fed = false;
  DistExample example;
  double predictor_value = 0.0;
  // IPM between the submission and the reference target; NaN if unknown.
  double ipm_to_target = 0.0;
  // False if the reply broke p_real(d) - p_t(d) > eps.
  bool reply_valid = true;
};

struct Transcript {
  std::vector<RoundRecord> rounds;
  Outcome outcome = Outcome::kLost;
  size_t won_round = 0;
  // Set when a Win was given while the reference IPM exceeded eps.
  bool dishonest_win = false;
  double final_ipm = 0.0;
  size_t bound = 0;
  double eps = 0.0;
  uint64_t class_fingerprint = 0;
  uint64_t seed = 0;
};

enum class Validation { kStrict, kRecord, kOff };

struct PlayOptions {
  size_t max_rounds = 0;
  double eps = 0.0;
  // Enables reply validation and IPM tracking.
  std::optional<Distribution> reference_target;
  Validation validation = Validation::kStrict;
  uint64_t seed = 0;
  size_t bound = 0;
};

// Mediates the game over the symmetric class `c`. Strict validation turns
// an invalid distinguisher into an error; a Win is always accepted and
// flagged when the reference IPM exceeds eps.
absl::StatusOr<Transcript> PlayGame(const ConceptClass& c,
                                    Generator& generator,
                                    Discriminator& discriminator,
                                    const PlayOptions& options);

}  // namespace sdg

#endif  // SDG_SEQUENTIAL_GAME_H_
