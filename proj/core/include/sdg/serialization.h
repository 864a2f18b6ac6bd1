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

#ifndef SDG_SERIALIZATION_H_
#define SDG_SERIALIZATION_H_

#include "nlohmann/json.hpp"
#include "sdg/dimensions.h"
#include "sdg/dp_fooling.h"
#include "sdg/measures.h"
#include "sdg/privacy.h"
#include "sdg/sequential_game.h"

namespace sdg {

nlohmann::json ToJson(const DimensionReport& report);
nlohmann::json ToJson(const Distribution& p);
nlohmann::json ToJson(const PrivacyParams& p);
nlohmann::json ToJson(const LedgerEntry& entry);
nlohmann::json ToJson(const PrivacyLedger& ledger);
nlohmann::json ToJson(const RoundRecord& record);
nlohmann::json ToJson(const Transcript& transcript);
nlohmann::json ToJson(const SizeCheck& check);
nlohmann::json ToJson(const PipelinePlan& plan);
nlohmann::json ToJson(const DpFoolResult& result);
nlohmann::json ToJson(const PucReport& report);
nlohmann::json ToJson(const AuditReport& report);

const char* BranchName(Branch branch);
const char* DerivationName(Derivation derivation);

}  // namespace sdg

#endif  // SDG_SERIALIZATION_H_
