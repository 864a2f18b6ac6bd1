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

#include "sdg/dp_fooling.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace sdg {
namespace {

bool InOpenUnit(double v) { return v > 0.0 && v < 1.0; }

size_t LabelledSize(double tau, size_t n) {
  const double raw = std::ceil(tau * static_cast<double>(n) - 1e-9);
  return std::max<size_t>(1, static_cast<size_t>(raw));
}

absl::Status CheckSample(const Sample& s, size_t num_points) {
  if (s.points.empty()) return absl::InvalidArgumentError("empty sample");
  for (size_t x : s.points) {
    if (x >= num_points) {
      return absl::OutOfRangeError("sample point outside the domain");
    }
  }
  return absl::OkStatus();
}

std::vector<LedgerEntry> EntriesOf(const PrivacyLedger& ledger) {
  return ledger.entries();
}

}  // namespace

absl::Status ValidateDiscriminatorConfig(const DiscriminatorConfig& cfg) {
  if (!InOpenUnit(cfg.eps)) {
    return absl::InvalidArgumentError("eps must lie in (0, 1)");
  }
  if (!InOpenUnit(cfg.delta)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  if (!(cfg.tau > 0.0 && cfg.tau <= 1.0)) {
    return absl::InvalidArgumentError("tau must lie in (0, 1]");
  }
  return absl::OkStatus();
}

absl::StatusOr<SizeCheck> DiscriminatorSizeCheck(const DiscriminatorConfig& cfg,
                                                 const LearnerSpec& learner,
                                                 size_t sample_size) {
  if (auto st = ValidateDiscriminatorConfig(cfg); !st.ok()) return st;
  const double td = cfg.tau * cfg.delta;
  absl::StatusOr<size_t> m =
      LearnerSampleComplexity(learner, cfg.eps / 8.0, td / 2.0);
  if (!m.ok()) return m.status();
  const double learner_side = static_cast<double>(*m) / cfg.tau;
  const double thresh_side = 64.0 * std::log(2.0 / td) / (cfg.eps * cfg.tau);
  SizeCheck check{.name = "discriminator",
                  .required = std::max(learner_side, thresh_side),
                  .actual = sample_size};
  check.passed = static_cast<double>(sample_size) >= check.required;
  return check;
}

std::vector<double> DiscriminatorMixture(const Distribution& p_s,
                                         const Distribution& p_t) {
  std::vector<double> joint(2 * p_s.size(), 0.0);
  for (size_t x = 0; x < p_s.size(); ++x) {
    joint[2 * x] = 0.5 * p_s[x];
    joint[2 * x + 1] = 0.5 * p_t[x];
  }
  return joint;
}

double MixtureLoss(const std::vector<double>& joint, const Hypothesis& d) {
  double loss = 0.0;
  for (size_t x = 0; x < d.size(); ++x) {
    loss += d[x] ? joint[2 * x] : joint[2 * x + 1];
  }
  return loss;
}

absl::StatusOr<std::unique_ptr<DpDiscriminator>> DpDiscriminator::Create(
    const ConceptClass& c, Sample s, const DiscriminatorConfig& cfg,
    const LearnerSpec& learner, Rng rng, PrivacyLedger* ledger,
    bool enforce_size_check) {
  if (auto st = ValidateDiscriminatorConfig(cfg); !st.ok()) return st;
  if (!c.IsSymmetric()) {
    return absl::InvalidArgumentError("class must be symmetric");
  }
  if (auto st = CheckSample(s, c.num_points()); !st.ok()) return st;
  if (ledger == nullptr) return absl::InvalidArgumentError("null ledger");
  if (!(learner.alpha > 0.0)) {
    return absl::InvalidArgumentError("learner alpha must be > 0");
  }
  if (enforce_size_check) {
    absl::StatusOr<SizeCheck> check =
        DiscriminatorSizeCheck(cfg, learner, s.points.size());
    if (!check.ok()) return check.status();
    if (!check->passed) {
      return absl::FailedPreconditionError(absl::StrFormat(
          "sample too small for the discriminator: %d < %.6g",
          s.points.size(), check->required));
    }
  }
  absl::StatusOr<Distribution> empirical = Empirical(s, c.num_points());
  if (!empirical.ok()) return empirical.status();
  return std::unique_ptr<DpDiscriminator>(
      new DpDiscriminator(c, std::move(s), *std::move(empirical), cfg,
                          learner, rng, ledger));
}

DpDiscriminator::DpDiscriminator(const ConceptClass& c, Sample s,
                                 Distribution empirical,
                                 const DiscriminatorConfig& cfg,
                                 const LearnerSpec& learner, Rng rng,
                                 PrivacyLedger* ledger)
    : class_(&c),
      sample_(std::move(s)),
      empirical_(std::move(empirical)),
      cfg_(cfg),
      learner_(learner),
      rng_(rng),
      ledger_(ledger),
      labelled_size_(LabelledSize(cfg.tau, sample_.points.size())) {}

LedgerEntry DpDiscriminator::RoundEntry() const {
  const size_t v = sample_.points.size();
  const double ratio =
      static_cast<double>(labelled_size_) / static_cast<double>(v);
  std::vector<LedgerEntry> parts;
  parts.push_back(SubsampledEntry(
      "exp_mech_learner",
      AtomicEntry("exp_mech", {.alpha = learner_.alpha, .beta = 0.0}),
      labelled_size_, v));
  parts.push_back(AtomicEntry("thresh", {.alpha = ratio, .beta = 0.0}));
  return ComposedEntry("dp_discriminator", std::move(parts));
}

DiscriminatorReply DpDiscriminator::Respond(const Distribution& p_t) {
  ledger_->Add(RoundEntry());

  LabeledSample labelled;
  labelled.pairs.reserve(labelled_size_);
  for (size_t i = 0; i < labelled_size_; ++i) {
    const bool y = rng_.Bernoulli(0.5);
    const size_t x = y ? DrawPoint(p_t, rng_)
                       : sample_.points[rng_.UniformIndex(
                             sample_.points.size())];
    labelled.pairs.emplace_back(x, y);
  }
  // The selected row minimizes the mixture loss, which is
  // (1 + p_S(d) - p_t(d)) / 2, so its complement maximizes the advantage.
  const size_t learned =
      ExpMechLearner(*class_, labelled, learner_.alpha, rng_).value();
  const size_t d_t = class_->ComplementIndex(learned).value();

  // The mean of {d_t(x)}_{x in S} is p_S(d_t).
  const double cutoff =
      p_t.Expect(class_->row(d_t)) + 5.0 * cfg_.eps / 8.0;
  const ThreshOutcome z =
      ThreshFromMean(empirical_.Expect(class_->row(d_t)), cutoff,
                     labelled_size_, rng_)
          .value();
  if (z == ThreshOutcome::kTop) return DiscriminatorReply::Distinguish(d_t);
  return DiscriminatorReply::Win();
}

absl::Status ValidatePipelineConfig(const PipelineConfig& cfg) {
  if (!InOpenUnit(cfg.eps0)) {
    return absl::InvalidArgumentError("eps0 must lie in (0, 1)");
  }
  if (!InOpenUnit(cfg.delta0)) {
    return absl::InvalidArgumentError("delta0 must lie in (0, 1)");
  }
  if (!InOpenUnit(cfg.kappa)) {
    return absl::InvalidArgumentError("kappa must lie in (0, 1)");
  }
  if (!(cfg.learner.alpha > 0.0)) {
    return absl::InvalidArgumentError("learner alpha must be > 0");
  }
  return absl::OkStatus();
}

bool PipelinePlan::checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const SizeCheck& c) {
    return c.passed || c.overridden;
  });
}

absl::StatusOr<PipelinePlan> PlanPipeline(const ConceptClass& c,
                                          size_t sample_size,
                                          const PipelineConfig& cfg) {
  if (auto st = ValidatePipelineConfig(cfg); !st.ok()) return st;
  if (sample_size == 0) return absl::InvalidArgumentError("empty sample");
  const ConceptClass sym = Symmetrize(c);
  PipelinePlan plan;
  absl::StatusOr<FoolingParams> fp =
      FoolingParams::Create(sym, cfg.eps0 / 4.0, cfg.limits);
  if (!fp.ok()) return fp.status();
  plan.dual_ldim = fp->dual_ldim;
  plan.generator_horizon = fp->horizon;
  absl::StatusOr<int> vc = VcDimension(sym, cfg.limits);
  if (!vc.ok()) return vc.status();
  plan.vc = *vc;

  const double n = static_cast<double>(sample_size);
  const double power = std::floor(std::pow(n, cfg.kappa) + 1e-9);
  const size_t t0 = std::min<size_t>(static_cast<size_t>(power),
                                     plan.generator_horizon);
  if (t0 < 1) {
    return absl::InvalidArgumentError("round count T0 must be >= 1");
  }
  plan.rounds = t0;
  plan.tau = 1.0 / static_cast<double>(t0);
  plan.labelled_size = LabelledSize(plan.tau, sample_size);

  absl::StatusOr<size_t> size1 =
      MEmpBound(cfg.eps0 / 2.0, cfg.delta0 / 2.0, plan.vc);
  if (!size1.ok()) return size1.status();
  plan.checks.push_back({.name = "uniform_convergence",
                         .required = static_cast<double>(*size1),
                         .actual = sample_size,
                         .passed = sample_size >= *size1,
                         .overridden = cfg.override_size1});

  LearnerSpec learner = cfg.learner;
  learner.class_size = sym.num_rows();
  absl::StatusOr<SizeCheck> size3 = DiscriminatorSizeCheck(
      {.eps = cfg.eps0 / 2.0, .delta = cfg.delta0 / 2.0, .tau = plan.tau},
      learner, sample_size);
  if (!size3.ok()) return size3.status();
  size3->overridden = cfg.override_size3;
  plan.checks.push_back(*size3);

  const double rounds_needed = std::pow(
      static_cast<double>(plan.generator_horizon), 1.0 / cfg.kappa);
  plan.checks.push_back({.name = "round_budget",
                         .required = rounds_needed,
                         .actual = sample_size,
                         .passed = power >= plan.generator_horizon,
                         .overridden = cfg.override_size2});
  return plan;
}

absl::StatusOr<std::optional<size_t>> MinimumSampleSize(
    const ConceptClass& c, const PipelineConfig& cfg, size_t limit) {
  PipelineConfig strict = cfg;
  strict.override_size1 = strict.override_size2 = strict.override_size3 =
      false;
  auto passes = [&](size_t n) -> absl::StatusOr<bool> {
    absl::StatusOr<PipelinePlan> plan = PlanPipeline(c, n, strict);
    if (!plan.ok()) return plan.status();
    return plan->checks_pass();
  };
  size_t hi = 1;
  while (true) {
    absl::StatusOr<bool> ok = passes(hi);
    if (!ok.ok()) return ok.status();
    if (*ok) break;
    if (hi >= limit) return std::optional<size_t>();
    hi = hi > limit / 2 ? limit : 2 * hi;
  }
  size_t lo = hi / 2 + 1;
  if (hi == 1) return std::optional<size_t>(1);
  while (lo < hi) {
    const size_t mid = lo + (hi - lo) / 2;
    absl::StatusOr<bool> ok = passes(mid);
    if (!ok.ok()) return ok.status();
    if (*ok) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return std::optional<size_t>(hi);
}

absl::StatusOr<DpFoolResult> DpFool(const ConceptClass& c, const Sample& s,
                                    const PipelineConfig& cfg, Rng& rng) {
  if (auto st = CheckSample(s, c.num_points()); !st.ok()) return st;
  absl::StatusOr<PipelinePlan> plan = PlanPipeline(c, s.points.size(), cfg);
  if (!plan.ok()) return plan.status();
  if (!plan->checks_pass()) {
    std::vector<std::string> failed;
    for (const auto& check : plan->checks) {
      if (!check.passed && !check.overridden) {
        failed.push_back(absl::StrFormat("%s needs %.6g, have %d",
                                         check.name, check.required,
                                         check.actual));
      }
    }
    return absl::FailedPreconditionError(
        absl::StrCat("sample size checks failed: ",
                     absl::StrJoin(failed, "; ")));
  }

  DpFoolResult result{.symmetric = Symmetrize(c),
                      .p_syn = Distribution::Uniform(c.num_points()),
                      .plan = *plan};
  const ConceptClass& sym = result.symmetric;

  absl::StatusOr<FoolingParams> fp =
      FoolingParams::Create(cfg.eps0 / 4.0, plan->dual_ldim);
  if (!fp.ok()) return fp.status();
  fp->horizon = plan->rounds;
  absl::StatusOr<std::unique_ptr<FoolingGenerator>> generator =
      MakeFoolingGenerator(sym, *fp, cfg.generator_learner, cfg.soa_options);
  if (!generator.ok()) return generator.status();

  LearnerSpec learner = cfg.learner;
  learner.class_size = sym.num_rows();
  PrivacyLedger rounds_ledger;
  absl::StatusOr<std::unique_ptr<DpDiscriminator>> discriminator =
      DpDiscriminator::Create(
          sym, s,
          {.eps = cfg.eps0 / 2.0, .delta = cfg.delta0 / 2.0, .tau = plan->tau},
          learner, rng.Fork("dp_fool.discriminator"), &rounds_ledger,
          /*enforce_size_check=*/false);
  if (!discriminator.ok()) return discriminator.status();

  PlayOptions options{.max_rounds = plan->rounds,
                      .eps = cfg.eps0 / 4.0,
                      .reference_target = (*discriminator)->empirical(),
                      .validation = Validation::kRecord,
                      .seed = rng.seed(),
                      .bound = plan->rounds};
  absl::StatusOr<Transcript> transcript =
      PlayGame(sym, **generator, **discriminator, options);
  if (!transcript.ok()) return transcript.status();
  if (transcript->rounds.empty()) {
    return absl::InternalError("game ended without a round");
  }
  result.p_syn = transcript->rounds.back().submitted;
  result.transcript = *std::move(transcript);

  for (auto& entry : EntriesOf(rounds_ledger)) result.ledger.Add(entry);
  const size_t played = result.transcript.rounds.size();
  if (played < plan->rounds) {
    result.ledger.Add(ComposedEntry("unplayed_rounds",
                                    {(*discriminator)->RoundEntry()},
                                    plan->rounds - played));
  }
  result.ipm_to_sample =
      IpmSymmetric(sym, result.p_syn, (*discriminator)->empirical()).value;
  const double t0 = static_cast<double>(plan->rounds);
  result.closed_form_alpha =
      t0 * (6.0 * plan->tau * cfg.learner.alpha + plan->tau);
  return result;
}

std::vector<double> SampleFrequencies(const ConceptClass& c,
                                      const Sample& s) {
  std::vector<double> freq(c.num_rows(), 0.0);
  if (s.points.empty()) return freq;
  for (size_t d = 0; d < c.num_rows(); ++d) {
    size_t ones = 0;
    for (size_t x : s.points) ones += c.at(d, x) ? 1 : 0;
    freq[d] = static_cast<double>(ones) / static_cast<double>(s.points.size());
  }
  return freq;
}

absl::StatusOr<SanitizerOutput> Sanitize(const ConceptClass& c,
                                         const Sample& s,
                                         const SanitizeOptions& options,
                                         Rng& rng) {
  if (auto st = CheckSample(s, c.num_points()); !st.ok()) return st;
  if (s.points.size() % 2 != 0) {
    return absl::InvalidArgumentError("sanitizer input size must be even");
  }
  if (options.noiseless) {
    absl::StatusOr<Distribution> p = Empirical(s, c.num_points());
    if (!p.ok()) return p.status();
    SanitizerOutput out{.est = ExpectAll(c, *p), .p_syn = *p};
    return out;
  }
  const size_t m = s.points.size() / 2;
  Sample half;
  half.points.reserve(m);
  for (size_t i = 0; i < m; ++i) {
    half.points.push_back(s.points[rng.UniformIndex(s.points.size())]);
  }
  absl::StatusOr<DpFoolResult> fool = DpFool(c, half, options.pipeline, rng);
  if (!fool.ok()) return fool.status();
  SanitizerOutput out{.est = ExpectAll(c, fool->p_syn), .p_syn = fool->p_syn};
  out.ledger.Add(HalfSampledEntry("sanitize", EntriesOf(fool->ledger)));
  return out;
}

double CombineLoss(double est, double p_sigma, double est_sigma) {
  return std::clamp(est + p_sigma - 2.0 * p_sigma * est_sigma, 0.0, 1.0);
}

absl::StatusOr<PucReport> PrivateUniformConvergence(const ConceptClass& c,
                                                    const LabeledSample& s,
                                                    const PucOptions& options,
                                                    Rng& rng) {
  if (!InOpenUnit(options.eps) || !InOpenUnit(options.delta)) {
    return absl::InvalidArgumentError("eps and delta must lie in (0, 1)");
  }
  if (s.pairs.empty()) return absl::InvalidArgumentError("empty sample");
  for (const auto& [x, y] : s.pairs) {
    if (x >= c.num_points()) {
      return absl::OutOfRangeError("sample point outside the domain");
    }
  }
  const size_t n = s.pairs.size();
  const size_t auto_size = (n / 16) & ~size_t{1};
  PucReport report;
  report.m1 = options.m1 != 0 ? options.m1 : auto_size;
  report.m2 = options.m2 != 0 ? options.m2 : auto_size;
  if (report.m1 == 0 || report.m2 == 0) {
    return absl::InvalidArgumentError("sample too small for the prefixes");
  }
  if (report.m1 > n || report.m2 > n) {
    return absl::InvalidArgumentError("prefix longer than the sample");
  }
  if (options.enforce_size_check) {
    PipelineConfig inner = options.sanitizer.pipeline;
    inner.eps0 = options.eps / 18.0;
    inner.delta0 = options.delta / 6.0;
    absl::StatusOr<std::optional<size_t>> fool_size =
        MinimumSampleSize(c, inner, size_t{1} << 40);
    if (!fool_size.ok()) return fool_size.status();
    absl::StatusOr<int> vc = VcDimension(c, inner.limits);
    if (!vc.ok()) return vc.status();
    absl::StatusOr<size_t> u =
        MEmpBound(options.eps / 18.0, options.delta / 6.0, *vc);
    if (!u.ok()) return u.status();
    if (!fool_size->has_value() ||
        n < 16 * std::max(2 * **fool_size, *u)) {
      return absl::FailedPreconditionError(
          "sample too small for private uniform convergence");
    }
  }

  Sample prefix;
  for (size_t i = 0; i < report.m1; ++i) {
    prefix.points.push_back(s.pairs[i].first);
  }
  absl::StatusOr<SanitizerOutput> first =
      Sanitize(c, prefix, options.sanitizer, rng);
  if (!first.ok()) return first.status();

  absl::StatusOr<double> p = LaplaceCounter(s, rng);
  if (!p.ok()) return p.status();
  report.p = *p;
  report.sigma = *p >= 1.0 / 8.0;
  report.p_sigma = report.sigma ? *p : 1.0 - *p;

  // The sanitizer estimates P(d(x) = 1); EST' estimates P(d(x) = 0).
  report.est.resize(c.num_rows());
  for (size_t d = 0; d < c.num_rows(); ++d) {
    const double est_prime = 1.0 - first->est[d];
    report.est[d] = report.sigma ? 1.0 - est_prime : est_prime;
  }

  Sample labelled_prefix;
  for (const auto& [x, y] : s.pairs) {
    if (labelled_prefix.points.size() == report.m2) break;
    if (y == report.sigma) labelled_prefix.points.push_back(x);
  }
  if (labelled_prefix.points.size() < report.m2) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "label imbalance beyond guarantee: %d points labelled %d, need %d",
        labelled_prefix.points.size(), report.sigma ? 1 : 0, report.m2));
  }
  absl::StatusOr<SanitizerOutput> second =
      Sanitize(c, labelled_prefix, options.sanitizer, rng);
  if (!second.ok()) return second.status();
  report.est_sigma.resize(c.num_rows());
  report.l_hat.resize(c.num_rows());
  for (size_t d = 0; d < c.num_rows(); ++d) {
    report.est_sigma[d] =
        report.sigma ? second->est[d] : 1.0 - second->est[d];
    report.l_hat[d] =
        CombineLoss(report.est[d], report.p_sigma, report.est_sigma[d]);
  }

  report.ledger.Add(
      ComposedEntry("sanitize_prefix", EntriesOf(first->ledger)));
  report.ledger.Add(AtomicEntry("laplace_counter", kLaplaceCounterPrivacy));
  report.ledger.Add(
      ComposedEntry("sanitize_sigma_prefix", EntriesOf(second->ledger)));
  report.ledger.Add(PostProcessedEntry("loss_combination"));
  return report;
}

size_t ArgminLowestIndex(const std::vector<double>& values) {
  size_t best = 0;
  for (size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

absl::StatusOr<PapPacResult> PapPacFromPuc(const ConceptClass& c,
                                           const LabeledSample& s,
                                           const PucOptions& options,
                                           Rng& rng) {
  absl::StatusOr<PucReport> report =
      PrivateUniformConvergence(c, s, options, rng);
  if (!report.ok()) return report.status();
  PapPacResult result{.hypothesis = ArgminLowestIndex(report->l_hat),
                      .report = *std::move(report)};
  result.report.ledger.Add(PostProcessedEntry("argmin"));
  return result;
}

LabeledSample DrawLabeledSample(const Distribution& joint, size_t m,
                                Rng& rng) {
  LabeledSample s;
  s.pairs.reserve(m);
  for (size_t i = 0; i < m; ++i) {
    const size_t k = DrawPoint(joint, rng);
    s.pairs.emplace_back(k / 2, k % 2 == 1);
  }
  return s;
}

double PopulationLoss(const Distribution& joint, const Hypothesis& d) {
  double loss = 0.0;
  for (size_t x = 0; x < d.size(); ++x) {
    loss += d[x] ? joint[2 * x] : joint[2 * x + 1];
  }
  return loss;
}

}  // namespace sdg
