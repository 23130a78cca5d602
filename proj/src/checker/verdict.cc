/*
Copyright 2026 The maxcert Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "json.hpp"
#include "maxcert/checker.h"

namespace maxcert {

std::string_view ReasonName(Reason r) {
  switch (r) {
    case Reason::kSatCertFalsifiesClause:
      return "SAT_CERT_FALSIFIES_CLAUSE";
    case Reason::kSatCertBoundMismatch:
      return "SAT_CERT_BOUND_MISMATCH";
    case Reason::kSatCertCostMismatch:
      return "SAT_CERT_COST_MISMATCH";
    case Reason::kRupStepFailed:
      return "RUP_STEP_FAILED";
    case Reason::kProofMissingEmptyClause:
      return "PROOF_MISSING_EMPTY_CLAUSE";
    case Reason::kProofDeletesUnknownClause:
      return "PROOF_DELETES_UNKNOWN_CLAUSE";
    case Reason::kMinimalityRefuted:
      return "MINIMALITY_REFUTED";
    case Reason::kOptimumMismatch:
      return "OPTIMUM_MISMATCH";
    case Reason::kStructureError:
      return "STRUCTURE_ERROR";
  }
  return "";
}

std::string VerdictToJson(const Verdict& v, std::optional<int> method) {
  nlohmann::json j;
  j["status"] = v.valid ? "VALID" : "INVALID";
  j["reason"] = v.reason ? nlohmann::json(std::string(ReasonName(*v.reason))) : nullptr;
  j["message"] = v.message;
  j["certificates_checked"] = v.certificates_checked;
  if (method) j["method"] = *method;
  nlohmann::json w = nlohmann::json::object();
  if (v.witness.iteration) w["iteration"] = *v.witness.iteration;
  if (v.witness.clause_index) w["clause_index"] = *v.witness.clause_index;
  if (v.witness.proof_line) w["proof_line"] = *v.witness.proof_line;
  if (v.witness.file) w["file"] = *v.witness.file;
  if (v.witness.assignment) w["assignment"] = *v.witness.assignment;
  j["witness"] = v.valid ? nlohmann::json(nullptr) : w;
  return j.dump();
}

int ExitCode(const Verdict& v) {
  if (v.valid) return 0;
  return v.reason == Reason::kStructureError ? 2 : 1;
}

}  // namespace maxcert
