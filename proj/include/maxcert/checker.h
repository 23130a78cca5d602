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

#ifndef MAXCERT_CHECKER_H_
#define MAXCERT_CHECKER_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maxcert/certs.h"
#include "maxcert/formula.h"
#include "maxcert/proof_trace.h"

namespace maxcert {

enum class Reason {
  kSatCertFalsifiesClause,
  kSatCertBoundMismatch,
  kSatCertCostMismatch,
  kRupStepFailed,
  kProofMissingEmptyClause,
  kProofDeletesUnknownClause,
  kMinimalityRefuted,
  kOptimumMismatch,
  kStructureError,
};

std::string_view ReasonName(Reason r);  // e.g. "RUP_STEP_FAILED"

// Where a failure was observed. Unset fields do not apply.
struct Witness {
  std::optional<int> iteration;     // 1-based; 0 is the hard-feasibility check
  std::optional<int> clause_index;  // 0-based in the reconstructed instance
  std::optional<int> proof_line;    // 1-based line of the proof file
  std::optional<std::string> file;
  std::optional<std::vector<int>> assignment;

  bool operator==(const Witness&) const = default;
};

struct Verdict {
  bool valid = true;
  std::optional<Reason> reason;
  std::string message;
  Witness witness;
  // Iteration certificates (and minimality proofs) inspected.
  int certificates_checked = 0;

  static Verdict Valid(int checked = 0) { return {true, std::nullopt, {}, {}, checked}; }
  static Verdict Invalid(Reason r, std::string message, Witness w = {}) {
    return {false, r, std::move(message), std::move(w), 0};
  }
  bool Is(Reason r) const { return !valid && reason == r; }
};

// Single-line JSON object.
std::string VerdictToJson(const Verdict& v, std::optional<int> method = std::nullopt);

// 0 VALID, 1 INVALID, 2 structural error.
int ExitCode(const Verdict& v);

// A DRUP proof line that is not `[d] lit* 0`.
class DrupParseError : public Error {
 public:
  DrupParseError(int line, const std::string& what)
      : Error("proof line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ParsedProof {
  ProofTrace trace;
  std::vector<int> lines;  // source line of each step
};

// Blank lines and lines starting with 'c' are skipped.
ParsedProof ParseDrup(std::string_view text);

// Forward RUP check of `proof` against `f`.
Verdict CheckRefutation(const CnfFormula& f, const ParsedProof& proof);

Verdict CheckSatCertificate(const CnfFormula& f, std::span<const int> model,
                            std::span<const Literal> relaxation, int expected_bound);

// Falsified soft clauses of the model restricted to problem variables must
// equal `optimum`.
Verdict CheckFinalCost(const WcnfInstance& inst, std::span<const int> model, int optimum);

Verdict CheckUnsatCertificate(const CnfFormula& f, std::string_view proof_text);

Verdict CheckMinimality(const WcnfInstance& inst, const RunManifest& m,
                        const std::optional<std::string>& proof_text);

struct Method2Options {
  // Test hook: skip the minimality proof for msu3.
  bool check_minimality = true;
};

Verdict CheckMethod1(const Bundle& b);
Verdict CheckMethod2(const Bundle& b, const Method2Options& options = {});

// Bound updates, statuses and the reported optimum, from manifest data alone.
Verdict CheckTransitions(const RunManifest& m);

// Reads the bundle and runs the chosen method; bundle errors become
// STRUCTURE_ERROR verdicts.
Verdict CheckBundleDirectory(const std::filesystem::path& dir, int method);

}  // namespace maxcert

#endif  // MAXCERT_CHECKER_H_
