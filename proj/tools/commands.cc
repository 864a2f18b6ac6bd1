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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "schema.h"
#include "sdg/class_io.h"
#include "sdg/class_zoo.h"
#include "sdg/dimensions.h"
#include "sdg/dp_fooling.h"
#include "sdg/measures.h"
#include "sdg/online_learning.h"
#include "sdg/privacy.h"
#include "sdg/random.h"
#include "sdg/sequential_game.h"
#include "sdg/serialization.h"

namespace sdg::cli {
namespace {

using nlohmann::json;

constexpr double kLedgerTolerance = 1e-12;
constexpr double kRangeTolerance = 1e-12;

bool InUnitInterval(double v) {
  return v >= -kRangeTolerance && v <= 1.0 + kRangeTolerance;
}

json PipelineDefaults() {
  return {{"eps0", 0.4},       {"delta0", 0.2},
          {"kappa", 0.5},      {"generator", "mw"},
          {"learner_alpha", 1.0}, {"override_size_checks", false},
          {"max_experts", 1e12}, {"max_paths", 16384}};
}

absl::StatusOr<json> Defaults(const std::string& command) {
  json d = {{"seed", 0}, {"threads", 0}};
  if (command == "dims") return d;
  if (command == "fool") {
    d.update({{"trials", 10},
              {"eps", {0.3}},
              {"learner", "agnostic_soa"},
              {"target", "random"},
              {"max_experts", 1e12},
              {"max_paths", 16384}});
  } else if (command == "lowerbound") {
    d.update({{"trials", 2000},
              {"eps", 0.4},
              {"learner", "agnostic_soa"},
              {"max_experts", 1e12},
              {"max_paths", 16384}});
  } else if (command == "dpfool" || command == "sanitize") {
    d.update(PipelineDefaults());
    d.update({{"trials", 20}, {"sample_size", 30000}, {"target", "random"}});
    if (command == "sanitize") d["noiseless"] = false;
  } else if (command == "puc") {
    json sanitizer = PipelineDefaults();
    sanitizer.update({{"eps0", 0.2}, {"kappa", 0.33}, {"noiseless", false}});
    d.update({{"trials", 20},
              {"eps", 0.3},
              {"delta", 0.2},
              {"m1", 0},
              {"m2", 0},
              {"sample_size", 320000},
              {"labels", "agnostic"},
              {"sanitizer", sanitizer}});
  } else if (command == "audit") {
    d.update({{"trials", 100000},
              {"alpha", 1.0},
              {"sigma_size", 100},
              {"margin", 50},
              {"z", 3.0},
              {"slack", 0.0}});
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown command ", command));
  }
  return d;
}

void FillDefaults(json& config, const json& defaults) {
  for (const auto& [key, value] : defaults.items()) {
    if (!config.contains(key)) {
      config[key] = value;
    } else if (value.is_object() && config[key].is_object()) {
      FillDefaults(config[key], value);
    }
  }
}

LearnerKind ParseLearner(const json& v) {
  return v.get<std::string>() == "mw" ? LearnerKind::kMw
                                      : LearnerKind::kAgnosticSoa;
}

AgnosticSoaOptions SoaOptions(const json& config) {
  AgnosticSoaOptions options;
  options.max_experts = config["max_experts"].get<double>();
  options.max_paths = config["max_paths"].get<size_t>();
  return options;
}

PipelineConfig PipelineFromJson(const json& config, const ConceptClass& c) {
  PipelineConfig cfg{.eps0 = config["eps0"].get<double>(),
                     .delta0 = config["delta0"].get<double>(),
                     .kappa = config["kappa"].get<double>()};
  cfg.learner.alpha = config["learner_alpha"].get<double>();
  cfg.learner.class_size = Symmetrize(c).num_rows();
  cfg.generator_learner = ParseLearner(config["generator"]);
  cfg.soa_options = SoaOptions(config);
  if (config["override_size_checks"].get<bool>()) cfg.OverrideAll();
  return cfg;
}

Distribution MakeTarget(const std::string& kind, size_t n, Rng& rng) {
  if (kind == "uniform") return Distribution::Uniform(n);
  if (kind == "dirac") return Distribution::Dirac(n, rng.UniformIndex(n));
  std::vector<double> w(n);
  for (double& x : w) x = -std::log(rng.UniformOpen());
  return Distribution::Create(std::move(w)).value();
}

std::string LearnerName(LearnerKind kind) {
  return kind == LearnerKind::kMw ? "mw" : "agnostic_soa";
}

bool LedgerConsistent(const PrivacyLedger& ledger) {
  return ledger.MaxRederivationError() <= kLedgerTolerance;
}

TrialOutput Failed(TrialOutput t, const absl::Status& status) {
  t.passed = false;
  t.failure = status.ToString();
  return t;
}

// Pads the cells of a failed trial to the column count.
void PadCells(TrialOutput& t, size_t columns) {
  t.cells.resize(columns);
}

int Finish(const RunOptions& options, const std::vector<std::string>& columns,
           std::vector<TrialOutput> trials, json aggregate,
           bool aggregate_passed, bool jsonl, std::ostream& out,
           std::ostream& err, json report = nullptr) {
  for (auto& t : trials) PadCells(t, columns.size());
  auto summary = WriteRun(options, columns, trials, std::move(aggregate),
                          aggregate_passed, jsonl, std::move(report));
  if (!summary.ok()) {
    err << summary.status() << "\n";
    return kExitError;
  }
  for (size_t i = 0; i < trials.size(); ++i) {
    if (!trials[i].passed) {
      err << "trial " << i << ": " << trials[i].failure << "\n";
    }
  }
  out << summary->dump(2) << "\n";
  return (*summary)["invariants_passed"].get<bool>() ? kExitOk
                                                     : kExitInvariantFailure;
}

// ---------------------------------------------------------------------------

int RunDims(const RunOptions& options, std::ostream& out, std::ostream& err) {
  auto named = ResolveClass(options.config["class"]);
  if (!named.ok()) {
    err << named.status() << "\n";
    return kExitError;
  }
  auto report = ComputeDimensions(named->c);
  if (!report.ok()) {
    err << report.status() << "\n";
    return kExitError;
  }
  json j = ToJson(*report);
  j["class"] = named->name;
  j["points"] = named->c.num_points();
  j["rows"] = named->c.num_rows();
  j["symmetric"] = named->c.IsSymmetric();
  j["fingerprint"] = absl::StrFormat("%016x", named->c.Fingerprint());
  auto schema = LoadSchema("dims_report.schema.json");
  if (!schema.ok() || !ValidateJson(j, *schema).ok()) {
    err << "dimension report does not match its schema\n";
    return kExitError;
  }
  out << j.dump(2) << "\n";
  return report->dual_bound_holds ? kExitOk : kExitInvariantFailure;
}

// ---------------------------------------------------------------------------

int RunFool(const RunOptions& options, std::ostream& out, std::ostream& err) {
  const json& config = options.config;
  auto named = ResolveClass(config["class"]);
  if (!named.ok()) {
    err << named.status() << "\n";
    return kExitError;
  }
  const ConceptClass c = Symmetrize(named->c);
  auto dual = DualLittlestoneDimension(c);
  if (!dual.ok()) {
    err << dual.status() << "\n";
    return kExitError;
  }
  const std::vector<double> grid = config["eps"].get<std::vector<double>>();
  const LearnerKind kind = ParseLearner(config["learner"]);
  const AgnosticSoaOptions soa = SoaOptions(config);
  const std::string target_kind = config["target"].get<std::string>();
  const std::vector<std::string> columns = {
      "trial", "seed", "eps", "learner", "rounds", "bound",
      "outcome", "final_ipm", "ledger_alpha", "ledger_beta"};
  const size_t total = options.trials * grid.size();
  auto trials = RunTrials(total, options.threads, [&](size_t i) {
    const double eps = grid[i / options.trials];
    Rng rng = Rng::ForStream(options.seed, options.command, i);
    TrialOutput t{.seed = rng.seed()};
    t.cells = {absl::StrCat(i), absl::StrCat(rng.seed()), Cell(eps),
               LearnerName(kind)};
    auto params = FoolingParams::Create(eps, *dual);
    if (!params.ok()) return Failed(std::move(t), params.status());
    const Distribution target = MakeTarget(target_kind, c.num_points(), rng);
    auto generator = MakeFoolingGenerator(c, *params, kind, soa);
    if (!generator.ok()) return Failed(std::move(t), generator.status());
    HonestDiscriminator disc(c, target, eps);
    auto transcript = PlayGame(c, **generator, disc,
                               {.max_rounds = params->horizon,
                                .eps = eps,
                                .reference_target = target,
                                .validation = Validation::kStrict,
                                .seed = rng.seed(),
                                .bound = params->horizon});
    if (!transcript.ok()) return Failed(std::move(t), transcript.status());
    const bool won = transcript->outcome == Outcome::kWon;
    t.cells.insert(t.cells.end(),
                   {absl::StrCat(transcript->rounds.size()),
                    absl::StrCat(params->horizon), won ? "won" : "lost",
                    Cell(transcript->final_ipm), Cell(0.0), Cell(0.0)});
    t.result = ToJson(*transcript);
    if (!won || transcript->won_round > params->horizon) {
      t.passed = false;
      t.failure = "game not won within the round bound";
    } else if (transcript->dishonest_win) {
      t.passed = false;
      t.failure = "win accepted above eps";
    }
    return t;
  });
  size_t max_rounds = 0;
  double sum = 0.0;
  for (const auto& t : trials) {
    if (!t.result.contains("rounds")) continue;
    max_rounds = std::max(max_rounds, t.result["rounds"].size());
    sum += static_cast<double>(t.result["rounds"].size());
  }
  json aggregate = {{"class", named->name},
                    {"dual_ldim", *dual},
                    {"max_rounds", max_rounds},
                    {"mean_rounds", total == 0 ? 0.0 : sum / total}};
  return Finish(options, columns, std::move(trials), std::move(aggregate),
                true, true, out, err);
}

// ---------------------------------------------------------------------------

int RunLowerBound(const RunOptions& options, std::ostream& out,
                  std::ostream& err) {
  const json& config = options.config;
  auto named = ResolveClass(config["class"]);
  if (!named.ok()) {
    err << named.status() << "\n";
    return kExitError;
  }
  const ConceptClass c = Symmetrize(named->c);
  const double eps = config["eps"].get<double>();
  auto params = FoolingParams::Create(c, eps);
  if (!params.ok()) {
    err << params.status() << "\n";
    return kExitError;
  }
  const LearnerKind kind = ParseLearner(config["learner"]);
  const AgnosticSoaOptions soa = SoaOptions(config);
  const std::vector<std::string> columns = {
      "trial",  "seed",    "leaf",      "depth",        "distinguishers",
      "rounds", "bound",   "outcome",   "final_ipm",    "ledger_alpha",
      "ledger_beta"};
  auto trials = RunTrials(options.trials, options.threads, [&](size_t i) {
    Rng rng = Rng::ForStream(options.seed, options.command, i);
    TrialOutput t{.seed = rng.seed()};
    t.cells = {absl::StrCat(i), absl::StrCat(rng.seed())};
    auto adversary = TreeAdversary::Create(c, eps, rng);
    if (!adversary.ok()) return Failed(std::move(t), adversary.status());
    auto generator = MakeFoolingGenerator(c, *params, kind, soa);
    if (!generator.ok()) return Failed(std::move(t), generator.status());
    auto transcript = PlayGame(c, **generator, **adversary,
                               {.max_rounds = params->horizon,
                                .eps = eps,
                                .reference_target = (*adversary)->target(),
                                .validation = Validation::kStrict,
                                .seed = rng.seed(),
                                .bound = params->horizon});
    if (!transcript.ok()) return Failed(std::move(t), transcript.status());
    const bool won = transcript->outcome == Outcome::kWon;
    t.cells.insert(t.cells.end(),
                   {absl::StrCat((*adversary)->leaf_point()),
                    absl::StrCat((*adversary)->depth()),
                    absl::StrCat((*adversary)->served()),
                    absl::StrCat(transcript->rounds.size()),
                    absl::StrCat(params->horizon), won ? "won" : "lost",
                    Cell(transcript->final_ipm), Cell(0.0), Cell(0.0)});
    t.result = ToJson(*transcript);
    t.result["distinguishers"] = (*adversary)->served();
    t.result["leaf"] = (*adversary)->leaf_point();
    if (!won) {
      t.passed = false;
      t.failure = "game not won within the round bound";
    }
    return t;
  });
  double sum = 0.0;
  double sum_sq = 0.0;
  size_t n = 0;
  for (const auto& t : trials) {
    if (!t.result.contains("distinguishers")) continue;
    const double x = t.result["distinguishers"].get<double>();
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  const double mean = n == 0 ? 0.0 : sum / n;
  const double var =
      n < 2 ? 0.0 : std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
  const double stderr_mean = n == 0 ? 0.0 : std::sqrt(var / n);
  const double floor = params->dual_ldim / 2.0 - 3.0 * stderr_mean;
  const bool passed = n > 0 && mean >= floor;
  json aggregate = {{"class", named->name},
                    {"dual_ldim", params->dual_ldim},
                    {"mean_distinguishers", mean},
                    {"stderr", stderr_mean},
                    {"floor", floor},
                    {"mean_at_least_floor", passed}};
  return Finish(options, columns, std::move(trials), std::move(aggregate),
                passed, true, out, err);
}

// ---------------------------------------------------------------------------

// Refuses to run when a size check fails and was not overridden.
absl::Status CheckPlan(const ConceptClass& c, size_t n,
                       const PipelineConfig& cfg, PipelinePlan* plan) {
  auto p = PlanPipeline(c, n, cfg);
  if (!p.ok()) return p.status();
  for (const auto& check : p->checks) {
    if (!check.passed && !check.overridden) {
      return absl::FailedPreconditionError(absl::StrFormat(
          "size check %s needs %.0f points, got %d; pass "
          "--override-size-checks to run anyway",
          check.name, check.required, check.actual));
    }
  }
  *plan = *std::move(p);
  return absl::OkStatus();
}

int RunDpFool(const RunOptions& options, std::ostream& out,
              std::ostream& err) {
  const json& config = options.config;
  auto named = ResolveClass(config["class"]);
  if (!named.ok()) {
    err << named.status() << "\n";
    return kExitError;
  }
  const ConceptClass& c = named->c;
  const PipelineConfig cfg = PipelineFromJson(config, c);
  const size_t n = config["sample_size"].get<size_t>();
  PipelinePlan plan;
  if (auto s = CheckPlan(c, n, cfg, &plan); !s.ok()) {
    err << s << "\n";
    return kExitError;
  }
  const std::string target_kind = config["target"].get<std::string>();
  const std::vector<std::string> columns = {
      "trial",        "seed",         "rounds",      "bound",
      "final_ipm",    "ipm_to_real",  "ledger_alpha", "ledger_beta",
      "closed_form_alpha", "within_half_eps0"};
  auto trials = RunTrials(options.trials, options.threads, [&](size_t i) {
    Rng rng = Rng::ForStream(options.seed, options.command, i);
    TrialOutput t{.seed = rng.seed()};
    t.cells = {absl::StrCat(i), absl::StrCat(rng.seed())};
    const Distribution real = MakeTarget(target_kind, c.num_points(), rng);
    const Sample s = DrawSample(real, n, rng);
    auto r = DpFool(c, s, cfg, rng);
    if (!r.ok()) return Failed(std::move(t), r.status());
    const double to_real = IpmSymmetric(r->symmetric, r->p_syn, real).value;
    const PrivacyParams total = r->ledger.Total();
    const bool within = r->ipm_to_sample <= cfg.eps0 / 2;
    t.cells.insert(t.cells.end(),
                   {absl::StrCat(r->transcript.rounds.size()),
                    absl::StrCat(r->plan.rounds), Cell(r->ipm_to_sample),
                    Cell(to_real), Cell(total.alpha), Cell(total.beta),
                    Cell(r->closed_form_alpha), within ? "1" : "0"});
    t.result = ToJson(*r);
    t.result["ipm_to_real"] = to_real;
    if (!LedgerConsistent(r->ledger)) {
      t.passed = false;
      t.failure = "ledger does not re-derive";
    } else if (r->transcript.rounds.size() > r->plan.rounds) {
      t.passed = false;
      t.failure = "more rounds than T0";
    }
    return t;
  });
  size_t within = 0;
  double worst = 0.0;
  for (const auto& t : trials) {
    if (!t.result.contains("ipm_to_sample")) continue;
    const double ipm = t.result["ipm_to_sample"].get<double>();
    within += ipm <= cfg.eps0 / 2;
    worst = std::max(worst, ipm);
  }
  json aggregate = {
      {"class", named->name},
      {"rounds_T0", plan.rounds},
      {"labelled_size", plan.labelled_size},
      {"size_checks_pass", plan.checks_pass()},
      {"fraction_within_half_eps0",
       trials.empty() ? 0.0 : static_cast<double>(within) / trials.size()},
      {"max_ipm_to_sample", worst}};
  return Finish(options, columns, std::move(trials), std::move(aggregate),
                true, true, out, err);
}

// ---------------------------------------------------------------------------

int RunSanitize(const RunOptions& options, std::ostream& out,
                std::ostream& err) {
  const json& config = options.config;
  auto named = ResolveClass(config["class"]);
  if (!named.ok()) {
    err << named.status() << "\n";
    return kExitError;
  }
  const ConceptClass& c = named->c;
  const size_t n = config["sample_size"].get<size_t>();
  if (n % 2 != 0) {
    err << "sample_size must be even\n";
    return kExitError;
  }
  const SanitizeOptions sanitize{.pipeline = PipelineFromJson(config, c),
                                 .noiseless = config["noiseless"].get<bool>()};
  PipelinePlan plan;
  if (!sanitize.noiseless) {
    if (auto s = CheckPlan(c, n / 2, sanitize.pipeline, &plan); !s.ok()) {
      err << s << "\n";
      return kExitError;
    }
  }
  const std::string target_kind = config["target"].get<std::string>();
  const std::vector<std::string> columns = {
      "trial",       "seed",         "bound",       "final_ipm",
      "ipm_to_real", "ledger_alpha", "ledger_beta"};
  auto trials = RunTrials(options.trials, options.threads, [&](size_t i) {
    Rng rng = Rng::ForStream(options.seed, options.command, i);
    TrialOutput t{.seed = rng.seed()};
    t.cells = {absl::StrCat(i), absl::StrCat(rng.seed())};
    const Distribution real = MakeTarget(target_kind, c.num_points(), rng);
    const Sample s = DrawSample(real, n, rng);
    auto r = Sanitize(c, s, sanitize, rng);
    if (!r.ok()) return Failed(std::move(t), r.status());
    const std::vector<double> freq = SampleFrequencies(c, s);
    double to_sample = 0.0;
    double to_real = 0.0;
    bool in_range = true;
    for (size_t d = 0; d < c.num_rows(); ++d) {
      to_sample = std::max(to_sample, std::abs(r->est[d] - freq[d]));
      to_real = std::max(to_real, std::abs(r->est[d] - real.Expect(c.row(d))));
      in_range = in_range && InUnitInterval(r->est[d]);
    }
    const PrivacyParams total = r->ledger.Total();
    t.cells.insert(t.cells.end(),
                   {absl::StrCat(plan.rounds), Cell(to_sample),
                    Cell(to_real), Cell(total.alpha), Cell(total.beta)});
    t.result = {{"est", r->est},
                {"p_syn", ToJson(r->p_syn)},
                {"max_error_to_sample", to_sample},
                {"max_error_to_real", to_real},
                {"ledger", ToJson(r->ledger)}};
    if (!LedgerConsistent(r->ledger)) {
      t.passed = false;
      t.failure = "ledger does not re-derive";
    } else if (!in_range) {
      t.passed = false;
      t.failure = "estimate outside [0, 1]";
    }
    return t;
  });
  double worst = 0.0;
  for (const auto& t : trials) {
    if (t.result.contains("max_error_to_sample")) {
      worst = std::max(worst, t.result["max_error_to_sample"].get<double>());
    }
  }
  json aggregate = {{"class", named->name},
                    {"rounds_T0", plan.rounds},
                    {"max_error_to_sample", worst}};
  return Finish(options, columns, std::move(trials), std::move(aggregate),
                true, true, out, err);
}

// ---------------------------------------------------------------------------

Distribution PlantedJoint(const ConceptClass& c, const std::string& labels,
                          Rng& rng) {
  const size_t n = c.num_points();
  std::vector<double> w(2 * n);
  const size_t row = rng.UniformIndex(c.num_rows());
  const double noise = 0.2 * rng.Uniform();
  for (size_t x = 0; x < n; ++x) {
    const double px = -std::log(rng.UniformOpen());
    double q = rng.Uniform();
    if (labels == "noisy_row") q = c.at(row, x) ? 1.0 - noise : noise;
    w[2 * x] = px * (1.0 - q);
    w[2 * x + 1] = px * q;
  }
  return Distribution::Create(std::move(w)).value();
}

int RunPuc(const RunOptions& options, std::ostream& out, std::ostream& err) {
  const json& config = options.config;
  auto named = ResolveClass(config["class"]);
  if (!named.ok()) {
    err << named.status() << "\n";
    return kExitError;
  }
  const ConceptClass& c = named->c;
  PucOptions puc{.eps = config["eps"].get<double>(),
                 .delta = config["delta"].get<double>(),
                 .m1 = config["m1"].get<size_t>(),
                 .m2 = config["m2"].get<size_t>()};
  const json& sanitizer = config["sanitizer"];
  puc.sanitizer.pipeline = PipelineFromJson(sanitizer, c);
  puc.sanitizer.noiseless = sanitizer["noiseless"].get<bool>();
  const size_t n = config["sample_size"].get<size_t>();
  const std::string labels = config["labels"].get<std::string>();
  const std::vector<std::string> columns = {
      "trial", "seed", "sigma", "p", "max_error",
      "ledger_alpha", "ledger_beta", "within_eps"};
  auto trials = RunTrials(options.trials, options.threads, [&](size_t i) {
    Rng rng = Rng::ForStream(options.seed, options.command, i);
    TrialOutput t{.seed = rng.seed()};
    t.cells = {absl::StrCat(i), absl::StrCat(rng.seed())};
    const Distribution joint = PlantedJoint(c, labels, rng);
    const LabeledSample s = DrawLabeledSample(joint, n, rng);
    auto r = PrivateUniformConvergence(c, s, puc, rng);
    if (!r.ok()) return Failed(std::move(t), r.status());
    double err_max = 0.0;
    bool in_range = true;
    for (size_t d = 0; d < c.num_rows(); ++d) {
      err_max = std::max(
          err_max, std::abs(r->l_hat[d] - PopulationLoss(joint, c.row(d))));
      in_range = in_range && InUnitInterval(r->l_hat[d]);
    }
    const PrivacyParams total = r->ledger.Total();
    t.cells.insert(t.cells.end(),
                   {r->sigma ? "1" : "0", Cell(r->p), Cell(err_max),
                    Cell(total.alpha), Cell(total.beta),
                    err_max <= puc.eps ? "1" : "0"});
    t.result = ToJson(*r);
    t.result["max_error"] = err_max;
    if (!LedgerConsistent(r->ledger)) {
      t.passed = false;
      t.failure = "ledger does not re-derive";
    } else if (!in_range) {
      t.passed = false;
      t.failure = "loss estimate outside [0, 1]";
    }
    return t;
  });
  size_t within = 0;
  double worst = 0.0;
  for (const auto& t : trials) {
    if (!t.result.contains("max_error")) continue;
    const double e = t.result["max_error"].get<double>();
    within += e <= puc.eps;
    worst = std::max(worst, e);
  }
  json aggregate = {
      {"class", named->name},
      {"fraction_within_eps",
       trials.empty() ? 0.0 : static_cast<double>(within) / trials.size()},
      {"max_error", worst}};
  return Finish(options, columns, std::move(trials), std::move(aggregate),
                true, true, out, err);
}

// ---------------------------------------------------------------------------

// Moving one pair from (0, 1) to (1, 1) raises the error of row 10000 and
// lowers that of the eight rows 01***.
ConceptClass AuditClass() {
  std::vector<Hypothesis> rows = {Hypothesis::FromString("10000").value()};
  for (int tail = 0; tail < 8; ++tail) {
    std::string bits = "01";
    for (int j = 2; j >= 0; --j) bits += ((tail >> j) & 1) ? '1' : '0';
    rows.push_back(Hypothesis::FromString(bits).value());
  }
  return ConceptClass::Create(5, std::move(rows)).value();
}

int RunAudit(const RunOptions& options, std::ostream& out,
             std::ostream& err) {
  const json& config = options.config;
  const AuditOptions audit{.trials = options.trials,
                           .z = config["z"].get<double>(),
                           .slack = config["slack"].get<double>(),
                           .seed = options.seed};
  const std::string mechanism = config["mechanism"].get<std::string>();
  absl::StatusOr<AuditReport> report;
  if (mechanism == "exp_mech") {
    const ConceptClass c = AuditClass();
    const double alpha = config["alpha"].get<double>();
    const LabeledSample a{.pairs = {{0, true}}};
    const LabeledSample b{.pairs = {{1, true}}};
    report = DpAudit(
        [&](int neighbor, Rng& rng) {
          return ExpMechLearner(c, neighbor == 0 ? a : b, alpha, rng).value();
        },
        c.num_rows(), alpha, audit);
  } else {
    const size_t size = config["sigma_size"].get<size_t>();
    const size_t margin = config["margin"].get<size_t>();
    std::vector<double> sigma_a(size, 0.0);
    for (size_t i = 0; i < size / 2; ++i) sigma_a[i] = 1.0;
    std::vector<double> sigma_b = sigma_a;
    sigma_b[size - 1] = 1.0;
    const double cutoff = 0.52;
    report = DpAudit(
        [&](int neighbor, Rng& rng) {
          return static_cast<size_t>(
              Thresh(neighbor == 0 ? sigma_a : sigma_b, cutoff, margin, rng)
                  .value());
        },
        2, static_cast<double>(margin) / size, audit);
  }
  if (!report.ok()) {
    err << report.status() << "\n";
    return kExitError;
  }
  const std::vector<std::string> columns = {
      "event", "count_a", "count_b", "log_ratio", "log_ratio_lower",
      "excluded"};
  std::vector<TrialOutput> rows;
  for (const auto& e : report->events) {
    TrialOutput t;
    t.cells = {absl::StrCat(e.event),     absl::StrCat(e.count_a),
               absl::StrCat(e.count_b),   Cell(e.log_ratio),
               Cell(e.log_ratio_lower),   e.excluded ? "1" : "0"};
    rows.push_back(std::move(t));
  }
  for (const auto& w : report->warnings) err << "warning: " << w << "\n";
  json aggregate = {{"mechanism", mechanism},
                    {"declared_alpha", report->declared_alpha},
                    {"max_log_ratio", report->max_log_ratio},
                    {"max_lower_bound", report->max_lower_bound},
                    {"violation", report->violation}};
  return Finish(options, columns, std::move(rows), std::move(aggregate),
                !report->violation, false, out, err, ToJson(*report));
}

}  // namespace

absl::StatusOr<json> ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  json parsed = json::parse(buffer.str(), nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, " is not valid JSON"));
  }
  return parsed;
}

absl::StatusOr<RunOptions> ResolveConfig(const std::string& command,
                                         json config,
                                         const FlagOverrides& flags) {
  auto schema = LoadSchema(absl::StrCat("config.", command, ".schema.json"));
  if (!schema.ok()) return schema.status();
  if (auto s = ValidateJson(config, *schema); !s.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("config rejected: ", s.message()));
  }
  auto defaults = Defaults(command);
  if (!defaults.ok()) return defaults.status();
  FillDefaults(config, *defaults);
  if (flags.seed.has_value()) config["seed"] = *flags.seed;
  if (flags.trials.has_value()) config["trials"] = *flags.trials;
  if (flags.out.has_value()) config["out"] = *flags.out;
  if (flags.override_size_checks) {
    if (command == "dpfool" || command == "sanitize") {
      config["override_size_checks"] = true;
    } else if (command == "puc") {
      config["sanitizer"]["override_size_checks"] = true;
    }
  }
  if (auto s = ValidateJson(config, *schema); !s.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("effective config rejected: ", s.message()));
  }
  RunOptions options{.command = command, .config = config};
  options.seed = config["seed"].get<uint64_t>();
  options.trials = config.contains("trials") ? config["trials"].get<size_t>()
                                             : 1;
  options.threads = config["threads"].get<size_t>();
  if (config.contains("out")) {
    options.out_dir = config["out"].get<std::string>();
  } else if (const char* env = std::getenv(kOutDirEnv);
             env != nullptr && *env != '\0') {
    options.out_dir = env;
  } else {
    options.out_dir = "sdg_out";
  }
  return options;
}

absl::StatusOr<NamedClass> ResolveClass(const json& spec) {
  const bool has_zoo = spec.contains("zoo");
  const bool has_file = spec.contains("file");
  if (has_zoo == has_file) {
    return absl::InvalidArgumentError(
        "class needs exactly one of 'zoo' and 'file'");
  }
  if (has_file) {
    if (spec.contains("n") || spec.contains("k") || spec.contains("seed")) {
      return absl::InvalidArgumentError(
          "'n', 'k' and 'seed' apply to zoo classes only");
    }
    const std::string path = spec["file"].get<std::string>();
    auto c = LoadClassFile(path);
    if (!c.ok()) return c.status();
    return NamedClass{*std::move(c), absl::StrCat("file:", path)};
  }
  if (!spec.contains("n")) {
    return absl::InvalidArgumentError("zoo classes need 'n'");
  }
  const std::string zoo = spec["zoo"].get<std::string>();
  auto name = ParseZooName(zoo);
  if (!name.ok()) return name.status();
  const size_t n = spec["n"].get<size_t>();
  const size_t k = spec.value("k", size_t{0});
  const uint64_t seed = spec.value("seed", uint64_t{0});
  auto c = MakeZooClass(*name, n, k, seed);
  if (!c.ok()) return c.status();
  std::string label = *name == ZooName::kRandom
                          ? absl::StrFormat("random(%d,%d,%d)", n, k, seed)
                          : absl::StrFormat("%s(%d)", zoo, n);
  return NamedClass{*std::move(c), std::move(label)};
}

int RunCommand(const RunOptions& options, std::ostream& out,
               std::ostream& err) {
  const std::string& cmd = options.command;
  if (cmd == "dims") return RunDims(options, out, err);
  if (cmd == "fool") return RunFool(options, out, err);
  if (cmd == "lowerbound") return RunLowerBound(options, out, err);
  if (cmd == "dpfool") return RunDpFool(options, out, err);
  if (cmd == "sanitize") return RunSanitize(options, out, err);
  if (cmd == "puc") return RunPuc(options, out, err);
  if (cmd == "audit") return RunAudit(options, out, err);
  err << "unknown command " << cmd << "\n";
  return kExitError;
}

}  // namespace sdg::cli
