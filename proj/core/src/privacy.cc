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

#include "sdg/privacy.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_format.h"

namespace sdg {

absl::Status ValidatePrivacyParams(const PrivacyParams& p) {
  if (!(p.alpha >= 0.0) || !std::isfinite(p.alpha)) {
    return absl::InvalidArgumentError("alpha must be finite and >= 0");
  }
  if (!(p.beta >= 0.0 && p.beta <= 1.0)) {
    return absl::InvalidArgumentError("beta must lie in [0, 1]");
  }
  return absl::OkStatus();
}

double LaplaceNoise(double scale, Rng& rng) {
  const double u = rng.UniformOpen() - 0.5;
  const double magnitude = -scale * std::log(1.0 - 2.0 * std::abs(u));
  return u < 0 ? -magnitude : magnitude;
}

absl::StatusOr<ThreshOutcome> Thresh(const std::vector<double>& sigma,
                                     double c, size_t n_margin, Rng& rng) {
  if (sigma.empty()) return absl::InvalidArgumentError("empty sigma");
  double sum = 0.0;
  for (double s : sigma) sum += s;
  return ThreshFromMean(sum / static_cast<double>(sigma.size()), c, n_margin,
                        rng);
}

absl::StatusOr<ThreshOutcome> ThreshFromMean(double mean, double c,
                                             size_t n_margin, Rng& rng) {
  if (n_margin == 0) return absl::InvalidArgumentError("n_margin must be >= 1");
  const double noisy = mean + LaplaceNoise(1.0 / n_margin, rng);
  return noisy > c ? ThreshOutcome::kTop : ThreshOutcome::kBottom;
}

std::vector<double> ExpMechProbabilities(const ConceptClass& c,
                                         const LabeledSample& s,
                                         double alpha) {
  std::vector<double> log_w(c.num_rows());
  for (size_t d = 0; d < c.num_rows(); ++d) {
    size_t errors = 0;
    for (const auto& [x, y] : s.pairs) errors += c.at(d, x) != y;
    log_w[d] = -alpha * static_cast<double>(errors) / 2.0;
  }
  const double top = *std::max_element(log_w.begin(), log_w.end());
  double total = 0.0;
  for (double& w : log_w) {
    w = std::exp(w - top);
    total += w;
  }
  for (double& w : log_w) w /= total;
  return log_w;
}

absl::StatusOr<size_t> ExpMechLearner(const ConceptClass& c,
                                      const LabeledSample& s, double alpha,
                                      Rng& rng) {
  if (!(alpha > 0.0)) return absl::InvalidArgumentError("alpha must be > 0");
  if (s.pairs.empty()) return absl::InvalidArgumentError("empty sample");
  for (const auto& [x, y] : s.pairs) {
    if (x >= c.num_points()) {
      return absl::OutOfRangeError("sample point outside the domain");
    }
  }
  const std::vector<double> probs = ExpMechProbabilities(c, s, alpha);
  const double u = rng.Uniform();
  double cumulative = 0.0;
  size_t last_positive = 0;
  for (size_t d = 0; d < probs.size(); ++d) {
    if (probs[d] <= 0.0) continue;
    cumulative += probs[d];
    last_positive = d;
    if (u < cumulative) return d;
  }
  return last_positive;
}

absl::StatusOr<size_t> LearnerSampleComplexity(const LearnerSpec& spec,
                                               double eps, double delta) {
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("eps and delta must lie in (0, 1)");
  }
  if (!(spec.alpha > 0.0)) {
    return absl::InvalidArgumentError("learner alpha must be > 0");
  }
  if (spec.class_size == 0) return absl::InvalidArgumentError("empty class");
  const double m = spec.constant *
                   (std::log(static_cast<double>(spec.class_size)) +
                    std::log(1.0 / delta)) *
                   (1.0 / (spec.alpha * eps) + 1.0 / (eps * eps));
  return static_cast<size_t>(std::ceil(m));
}

PrivacyParams SubsampleFormula(const PrivacyParams& p, size_t u, size_t v) {
  const double uu = static_cast<double>(u);
  const double vv = static_cast<double>(v);
  // Dividing last keeps exactly representable cases exact.
  const double alpha = 6.0 * p.alpha * uu / vv;
  return {.alpha = alpha, .beta = std::exp(alpha) * 4.0 * uu * p.beta / vv};
}

absl::StatusOr<PrivacyParams> SubsampleAmplify(const PrivacyParams& p,
                                               size_t u, size_t v) {
  if (auto s = ValidatePrivacyParams(p); !s.ok()) return s;
  if (p.alpha > 1.0) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "amplification requires alpha <= 1, got %g", p.alpha));
  }
  if (!(v > 2 * u)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "amplification requires v > 2u, got u = %d, v = %d", u, v));
  }
  return SubsampleFormula(p, u, v);
}

PrivacyParams HalfSampleFormula(const PrivacyParams& p) {
  return {.alpha = 12.0 * p.alpha,
          .beta = std::exp(12.0 * p.alpha) * 8.0 * p.beta};
}

PrivacyParams Compose(const std::vector<PrivacyParams>& parts) {
  PrivacyParams total;
  for (const auto& p : parts) {
    total.alpha += p.alpha;
    total.beta += p.beta;
  }
  return total;
}

namespace {

PrivacyParams SumChildren(const std::vector<LedgerEntry>& children) {
  std::vector<PrivacyParams> parts;
  parts.reserve(children.size());
  for (const auto& c : children) parts.push_back(c.params);
  return Compose(parts);
}

PrivacyParams Scale(const PrivacyParams& p, size_t k) {
  const double kk = static_cast<double>(k);
  return {.alpha = kk * p.alpha, .beta = kk * p.beta};
}

double EntryError(const LedgerEntry& e) {
  const PrivacyParams r = Rederive(e);
  double err = std::max(std::abs(r.alpha - e.params.alpha),
                        std::abs(r.beta - e.params.beta));
  for (const auto& c : e.children) err = std::max(err, EntryError(c));
  return err;
}

}  // namespace

LedgerEntry AtomicEntry(std::string mechanism, PrivacyParams params) {
  return LedgerEntry{.mechanism = std::move(mechanism),
                     .params = params,
                     .derivation = Derivation::kAtomic};
}

LedgerEntry ComposedEntry(std::string mechanism,
                          std::vector<LedgerEntry> children, size_t repeat) {
  LedgerEntry e{.mechanism = std::move(mechanism),
                .derivation = Derivation::kComposed,
                .children = std::move(children),
                .repeat = repeat};
  e.params = Scale(SumChildren(e.children), repeat);
  return e;
}

LedgerEntry SubsampledEntry(std::string mechanism, LedgerEntry inner,
                            size_t u, size_t v) {
  LedgerEntry e{.mechanism = std::move(mechanism),
                .derivation = Derivation::kAmplified,
                .rule = AmplificationRule::kSubsample,
                .u = u,
                .v = v};
  e.preconditions_hold = inner.params.alpha <= 1.0 && v > 2 * u;
  e.params = SubsampleFormula(inner.params, u, v);
  e.children.push_back(std::move(inner));
  return e;
}

LedgerEntry HalfSampledEntry(std::string mechanism,
                             std::vector<LedgerEntry> inner) {
  LedgerEntry e{.mechanism = std::move(mechanism),
                .derivation = Derivation::kAmplified,
                .children = std::move(inner),
                .rule = AmplificationRule::kHalfSample};
  e.params = HalfSampleFormula(SumChildren(e.children));
  return e;
}

LedgerEntry PostProcessedEntry(std::string mechanism) {
  return LedgerEntry{.mechanism = std::move(mechanism),
                     .derivation = Derivation::kPostProcessed};
}

PrivacyParams Rederive(const LedgerEntry& entry) {
  switch (entry.derivation) {
    case Derivation::kAtomic:
      return entry.params;
    case Derivation::kPostProcessed:
      return {};
    case Derivation::kComposed:
      return Scale(SumChildren(entry.children), entry.repeat);
    case Derivation::kAmplified: {
      const PrivacyParams base = SumChildren(entry.children);
      return entry.rule == AmplificationRule::kSubsample
                 ? SubsampleFormula(base, entry.u, entry.v)
                 : HalfSampleFormula(base);
    }
  }
  return entry.params;
}

PrivacyParams PrivacyLedger::Total() const { return SumChildren(entries_); }

double PrivacyLedger::MaxRederivationError() const {
  double err = 0.0;
  for (const auto& e : entries_) err = std::max(err, EntryError(e));
  return err;
}

absl::StatusOr<double> LaplaceCounter(const LabeledSample& s, Rng& rng) {
  if (s.pairs.empty()) return absl::InvalidArgumentError("empty sample");
  size_t ones = 0;
  for (const auto& [x, y] : s.pairs) ones += y ? 1 : 0;
  const double m = static_cast<double>(s.pairs.size());
  return static_cast<double>(ones) / m + LaplaceNoise(0.5, rng) / m;
}

WilsonInterval Wilson(size_t successes, size_t trials, double z) {
  if (trials == 0) return {};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {.low = std::max(0.0, center - half),
          .high = std::min(1.0, center + half)};
}

absl::StatusOr<AuditReport> DpAudit(const AuditMechanism& mechanism,
                                    size_t num_events, double declared_alpha,
                                    const AuditOptions& options) {
  if (num_events == 0) return absl::InvalidArgumentError("no events");
  if (options.trials == 0) return absl::InvalidArgumentError("no trials");
  std::vector<size_t> counts_a(num_events, 0);
  std::vector<size_t> counts_b(num_events, 0);
  for (size_t i = 0; i < options.trials; ++i) {
    Rng ra = Rng::ForStream(options.seed, "audit.a", i);
    Rng rb = Rng::ForStream(options.seed, "audit.b", i);
    const size_t ea = mechanism(0, ra);
    const size_t eb = mechanism(1, rb);
    if (ea >= num_events || eb >= num_events) {
      return absl::OutOfRangeError("mechanism output outside the events");
    }
    ++counts_a[ea];
    ++counts_b[eb];
  }

  AuditReport report;
  report.declared_alpha = declared_alpha;
  const double n = static_cast<double>(options.trials);
  for (size_t e = 0; e < num_events; ++e) {
    AuditEvent ev{.event = e, .count_a = counts_a[e], .count_b = counts_b[e]};
    if (counts_a[e] == 0 && counts_b[e] == 0) continue;
    if (counts_a[e] == 0 || counts_b[e] == 0) {
      ev.excluded = true;
      report.warnings.push_back(absl::StrFormat(
          "event %d excluded: counts %d and %d", e, counts_a[e],
          counts_b[e]));
      report.events.push_back(ev);
      continue;
    }
    const WilsonInterval a = Wilson(counts_a[e], options.trials, options.z);
    const WilsonInterval b = Wilson(counts_b[e], options.trials, options.z);
    const double forward = std::log(counts_a[e] / n) - std::log(counts_b[e] / n);
    const double forward_low = std::log(a.low) - std::log(b.high);
    const double backward_low = std::log(b.low) - std::log(a.high);
    ev.log_ratio = std::abs(forward);
    ev.log_ratio_lower = forward >= 0 ? forward_low : backward_low;
    report.max_log_ratio = std::max(report.max_log_ratio, ev.log_ratio);
    report.max_lower_bound =
        std::max(report.max_lower_bound, std::max(forward_low, backward_low));
    report.events.push_back(ev);
  }
  report.violation =
      report.max_lower_bound > declared_alpha + options.slack;
  return report;
}

}  // namespace sdg
