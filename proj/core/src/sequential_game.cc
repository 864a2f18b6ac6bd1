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

#include "sdg/sequential_game.h"

#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_format.h"
#include "sdg/game_solver.h"

namespace sdg {

size_t FoolingHorizon(double eps, int dual_ldim) {
  if (dual_ldim <= 0) return 1;
  const double a = 4.0 * dual_ldim / (eps * eps);
  const double t = std::ceil(a * std::log(a));
  return t < 1.0 ? 1 : static_cast<size_t>(t);
}

absl::StatusOr<FoolingParams> FoolingParams::Create(double eps,
                                                    int dual_ldim) {
  if (!(eps > 0.0 && eps < 1.0)) {
    return absl::InvalidArgumentError("eps must lie in (0, 1)");
  }
  if (dual_ldim < 0) {
    return absl::InvalidArgumentError("negative dual Littlestone dimension");
  }
  return FoolingParams{.eps = eps,
                       .dual_ldim = dual_ldim,
                       .horizon = FoolingHorizon(eps, dual_ldim)};
}

absl::StatusOr<FoolingParams> FoolingParams::Create(
    const ConceptClass& c, double eps, const DimensionLimits& limits) {
  auto ldim = LittlestoneDimension(Dualize(c), limits);
  if (!ldim.ok()) return ldim.status();
  return Create(eps, *ldim);
}

FoolingGenerator::FoolingGenerator(const ConceptClass& c,
                                   const FoolingParams& params,
                                   std::unique_ptr<OnlineLearner> learner)
    : class_(&c),
      params_(params),
      learner_(std::move(learner)),
      previous_(Distribution::Uniform(c.num_points())) {}

absl::StatusOr<std::unique_ptr<FoolingGenerator>> FoolingGenerator::Create(
    const ConceptClass& c, const FoolingParams& params,
    std::unique_ptr<OnlineLearner> learner) {
  if (!c.IsSymmetric()) {
    return absl::InvalidArgumentError("the generator needs a symmetric class");
  }
  if (learner == nullptr || learner->num_rows() != c.num_rows()) {
    return absl::InvalidArgumentError("learner does not match the class");
  }
  return std::unique_ptr<FoolingGenerator>(
      new FoolingGenerator(c, params, std::move(learner)));
}

absl::StatusOr<GeneratorMove> FoolingGenerator::Propose() {
  if (exhausted()) {
    return absl::FailedPreconditionError("generator horizon exhausted");
  }
  auto f = learner_->Predict();
  if (!f.ok()) return f.status();
  pending_predictor_ = *std::move(f);

  if (auto p = learner_->ProperMixture(); p.has_value()) {
    pending_ = GeneratorMove{.submit = *std::move(p), .branch = Branch::kIf};
    return *pending_;
  }
  auto result = AmenabilityCheck(pending_predictor_, *class_, params_.eps);
  if (!result.ok()) return result.status();
  if (auto* proper = std::get_if<ProperBranch>(&*result)) {
    pending_ = GeneratorMove{.submit = proper->p, .branch = Branch::kIf};
  } else {
    auto& sep = std::get<SeparatorBranch>(*result);
    if (!(sep.margin > params_.eps / 2 - kAmenabilityTolerance)) {
      return absl::InternalError(absl::StrFormat(
          "separating mixture has margin %.12g, not above eps/2", sep.margin));
    }
    pending_ = GeneratorMove{.submit = previous_,
                             .branch = Branch::kElse,
                             .dbar = std::move(sep.dbar)};
  }
  return *pending_;
}

absl::StatusOr<LearnerFeedback> FoolingGenerator::Observe(
    const DiscriminatorReply& reply) {
  if (!pending_.has_value()) {
    return absl::FailedPreconditionError("Observe without a pending move");
  }
  GeneratorMove move = *std::move(pending_);
  pending_.reset();
  LearnerFeedback feedback;
  if (move.branch == Branch::kElse) {
    feedback.example = DistExample{.support = std::move(move.dbar),
                                   .label = false};
  } else {
    if (reply.win) return feedback;
    if (reply.distinguisher >= class_->num_rows()) {
      return absl::OutOfRangeError("distinguisher outside the class");
    }
    feedback.example = DistExample::Dirac(reply.distinguisher, true);
    previous_ = std::move(move.submit);
  }
  feedback.fed = true;
  feedback.predictor_value = pending_predictor_.Evaluate(feedback.example);
  if (auto s = learner_->Update(feedback.example); !s.ok()) return s;
  return feedback;
}

absl::StatusOr<std::unique_ptr<FoolingGenerator>> MakeFoolingGenerator(
    const ConceptClass& c, const FoolingParams& params, LearnerKind kind,
    const AgnosticSoaOptions& options) {
  absl::StatusOr<std::unique_ptr<OnlineLearner>> learner =
      kind == LearnerKind::kMw
          ? MakeMwLearner(c, params.horizon)
          : MakeAgnosticSoaLearner(c, params.horizon, options);
  if (!learner.ok()) return learner.status();
  return FoolingGenerator::Create(c, params, *std::move(learner));
}

HonestDiscriminator::HonestDiscriminator(const ConceptClass& c,
                                         Distribution p_real, double eps)
    : class_(&c),
      p_real_(std::move(p_real)),
      real_values_(ExpectAll(c, p_real_)),
      eps_(eps) {}

DiscriminatorReply HonestDiscriminator::Respond(const Distribution& p_t) {
  for (size_t d = 0; d < class_->num_rows(); ++d) {
    if (real_values_[d] - p_t.Expect(class_->row(d)) > eps_ + kWinTolerance) {
      return DiscriminatorReply::Distinguish(d);
    }
  }
  return DiscriminatorReply::Win();
}

TreeAdversary::TreeAdversary(const ConceptClass& c, double eps,
                             std::vector<std::pair<size_t, bool>> path,
                             size_t leaf_point)
    : class_(&c),
      eps_(eps),
      path_(std::move(path)),
      leaf_point_(leaf_point),
      target_(Distribution::Dirac(c.num_points(), leaf_point)) {}

absl::StatusOr<std::unique_ptr<TreeAdversary>> TreeAdversary::Create(
    const ConceptClass& c, double eps, Rng& rng,
    const DimensionLimits& limits) {
  if (!c.IsSymmetric()) {
    return absl::InvalidArgumentError("the adversary needs a symmetric class");
  }
  DualView view = DualizeWithMap(c);
  auto ldim = LittlestoneDimension(view.dual, limits);
  if (!ldim.ok()) return ldim.status();
  auto tree = ShatteredTree(view.dual, *ldim, limits);
  if (!tree.ok()) return tree.status();
  if (!tree->has_value()) {
    return absl::InternalError("no shattered tree at the Littlestone depth");
  }
  const size_t leaf = rng.UniformIndex(size_t{1} << *ldim);
  const size_t point = view.representative_point[(*tree)->leaf_rows[leaf]];
  return std::unique_ptr<TreeAdversary>(
      new TreeAdversary(c, eps, (*tree)->Path(leaf), point));
}

DiscriminatorReply TreeAdversary::Respond(const Distribution& p_t) {
  for (; next_ < path_.size(); ++next_) {
    const auto [row, label] = path_[next_];
    const double gap = (label ? 1.0 : 0.0) - p_t.Expect(class_->row(row));
    if (std::abs(gap) <= eps_) continue;
    ++next_;
    ++served_;
    if (gap > 0) return DiscriminatorReply::Distinguish(row);
    return DiscriminatorReply::Distinguish(*class_->ComplementIndex(row));
  }
  return DiscriminatorReply::Win();
}

absl::StatusOr<Transcript> PlayGame(const ConceptClass& c,
                                    Generator& generator,
                                    Discriminator& discriminator,
                                    const PlayOptions& options) {
  if (!c.IsSymmetric()) {
    return absl::InvalidArgumentError("the game needs a symmetric class");
  }
  const bool tracked = options.reference_target.has_value();
  std::vector<double> real_values;
  if (tracked) real_values = ExpectAll(c, *options.reference_target);

  Transcript transcript;
  transcript.bound = options.bound;
  transcript.eps = options.eps;
  transcript.class_fingerprint = c.Fingerprint();
  transcript.seed = options.seed;

  for (size_t round = 1; round <= options.max_rounds; ++round) {
    if (generator.exhausted()) break;
    auto move = generator.Propose();
    if (!move.ok()) return move.status();
    const DiscriminatorReply reply = discriminator.Respond(move->submit);

    RoundRecord record{.round = round,
                       .submitted = move->submit,
                       .reply = reply,
                       .branch = move->branch};
    record.ipm_to_target = std::numeric_limits<double>::quiet_NaN();
    if (tracked) {
      record.ipm_to_target =
          IpmSymmetric(c, *options.reference_target, move->submit).value;
      if (!reply.win && options.validation != Validation::kOff) {
        const bool in_range = reply.distinguisher < c.num_rows();
        record.reply_valid =
            in_range && real_values[reply.distinguisher] -
                                move->submit.Expect(c.row(reply.distinguisher)) >
                            options.eps;
        if (!record.reply_valid && options.validation == Validation::kStrict) {
          return absl::FailedPreconditionError(absl::StrFormat(
              "protocol violation in round %d: row %d is not an "
              "eps-distinguisher",
              round, reply.distinguisher));
        }
      }
    }

    if (reply.win) {
      transcript.outcome = Outcome::kWon;
      transcript.won_round = round;
      if (tracked) {
        transcript.final_ipm = record.ipm_to_target;
        transcript.dishonest_win =
            record.ipm_to_target > options.eps + kWinTolerance;
      }
      transcript.rounds.push_back(std::move(record));
      return transcript;
    }

    auto feedback = generator.Observe(reply);
    if (!feedback.ok()) return feedback.status();
    record.fed = feedback->fed;
    record.example = std::move(feedback->example);
    record.predictor_value = feedback->predictor_value;
    if (tracked) transcript.final_ipm = record.ipm_to_target;
    transcript.rounds.push_back(std::move(record));
  }
  transcript.outcome = Outcome::kLost;
  return transcript;
}

}  // namespace sdg
