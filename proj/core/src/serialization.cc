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

#include "sdg/serialization.h"

#include <cmath>

namespace sdg {
namespace {

// NaN and infinities have no JSON encoding; they serialize as null.
nlohmann::json Number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

const char* BranchName(Branch branch) {
  switch (branch) {
    case Branch::kNone:
      return "none";
    case Branch::kIf:
      return "if";
    case Branch::kElse:
      return "else";
  }
  return "none";
}

const char* DerivationName(Derivation derivation) {
  switch (derivation) {
    case Derivation::kAtomic:
      return "atomic";
    case Derivation::kComposed:
      return "composed";
    case Derivation::kAmplified:
      return "amplified";
    case Derivation::kPostProcessed:
      return "post_processed";
  }
  return "atomic";
}

nlohmann::json ToJson(const DimensionReport& report) {
  return {{"vc", report.vc},
          {"ldim", report.ldim},
          {"dual_ldim", report.dual_ldim},
          {"dual_bound_holds", report.dual_bound_holds}};
}

nlohmann::json ToJson(const Distribution& p) { return p.weights(); }

nlohmann::json ToJson(const PrivacyParams& p) {
  return {{"alpha", Number(p.alpha)}, {"beta", Number(p.beta)}};
}

nlohmann::json ToJson(const LedgerEntry& entry) {
  nlohmann::json j = {{"mechanism", entry.mechanism},
                      {"params", ToJson(entry.params)},
                      {"derivation", DerivationName(entry.derivation)}};
  if (entry.derivation == Derivation::kComposed) j["repeat"] = entry.repeat;
  if (entry.derivation == Derivation::kAmplified) {
    j["rule"] = entry.rule == AmplificationRule::kSubsample ? "subsample"
                                                            : "half_sample";
    if (entry.rule == AmplificationRule::kSubsample) {
      j["u"] = entry.u;
      j["v"] = entry.v;
    }
    j["preconditions_hold"] = entry.preconditions_hold;
  }
  if (!entry.children.empty()) {
    nlohmann::json children = nlohmann::json::array();
    for (const auto& c : entry.children) children.push_back(ToJson(c));
    j["children"] = std::move(children);
  }
  return j;
}

nlohmann::json ToJson(const PrivacyLedger& ledger) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : ledger.entries()) entries.push_back(ToJson(e));
  return {{"entries", std::move(entries)},
          {"total", ToJson(ledger.Total())},
          {"rederivation_error", Number(ledger.MaxRederivationError())}};
}

nlohmann::json ToJson(const RoundRecord& record) {
  nlohmann::json j = {{"round", record.round},
                      {"submitted", ToJson(record.submitted)},
                      {"win", record.reply.win},
                      {"branch", BranchName(record.branch)},
                      {"fed", record.fed},
                      {"ipm_to_target", Number(record.ipm_to_target)},
                      {"reply_valid", record.reply_valid}};
  if (!record.reply.win) j["distinguisher"] = record.reply.distinguisher;
  if (record.fed) {
    nlohmann::json support = nlohmann::json::array();
    for (const auto& [row, w] : record.example.support) {
      support.push_back({row, w});
    }
    j["example"] = {{"support", std::move(support)},
                    {"label", record.example.label}};
    j["predictor_value"] = Number(record.predictor_value);
  }
  return j;
}

nlohmann::json ToJson(const Transcript& transcript) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& r : transcript.rounds) rounds.push_back(ToJson(r));
  return {{"outcome", transcript.outcome == Outcome::kWon ? "won" : "lost"},
          {"won_round", transcript.won_round},
          {"dishonest_win", transcript.dishonest_win},
          {"final_ipm", Number(transcript.final_ipm)},
          {"bound", transcript.bound},
          {"eps", transcript.eps},
          {"class_fingerprint", transcript.class_fingerprint},
          {"seed", transcript.seed},
          {"rounds", std::move(rounds)}};
}

nlohmann::json ToJson(const SizeCheck& check) {
  return {{"name", check.name},
          {"required", Number(check.required)},
          {"actual", check.actual},
          {"passed", check.passed},
          {"overridden", check.overridden}};
}

nlohmann::json ToJson(const PipelinePlan& plan) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : plan.checks) checks.push_back(ToJson(c));
  return {{"dual_ldim", plan.dual_ldim},
          {"vc", plan.vc},
          {"generator_horizon", plan.generator_horizon},
          {"rounds", plan.rounds},
          {"tau", plan.tau},
          {"labelled_size", plan.labelled_size},
          {"checks", std::move(checks)}};
}

nlohmann::json ToJson(const DpFoolResult& result) {
  return {{"plan", ToJson(result.plan)},
          {"p_syn", ToJson(result.p_syn)},
          {"ipm_to_sample", Number(result.ipm_to_sample)},
          {"closed_form_alpha", Number(result.closed_form_alpha)},
          {"ledger", ToJson(result.ledger)},
          {"transcript", ToJson(result.transcript)}};
}

nlohmann::json ToJson(const PucReport& report) {
  return {{"sigma", report.sigma ? 1 : 0},
          {"p", Number(report.p)},
          {"p_sigma", Number(report.p_sigma)},
          {"m1", report.m1},
          {"m2", report.m2},
          {"est", report.est},
          {"est_sigma", report.est_sigma},
          {"l_hat", report.l_hat},
          {"ledger", ToJson(report.ledger)}};
}

nlohmann::json ToJson(const AuditReport& report) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : report.events) {
    events.push_back({{"event", e.event},
                      {"count_a", e.count_a},
                      {"count_b", e.count_b},
                      {"log_ratio", Number(e.log_ratio)},
                      {"log_ratio_lower", Number(e.log_ratio_lower)},
                      {"excluded", e.excluded}});
  }
  return {{"max_log_ratio", Number(report.max_log_ratio)},
          {"max_lower_bound", Number(report.max_lower_bound)},
          {"declared_alpha", report.declared_alpha},
          {"violation", report.violation},
          {"events", std::move(events)},
          {"warnings", report.warnings}};
}

}  // namespace sdg
