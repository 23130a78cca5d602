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

#ifndef MAXCERT_SATCORE_H_
#define MAXCERT_SATCORE_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxcert/formula.h"
#include "maxcert/proof_trace.h"

namespace maxcert::sat {

enum class Status { kSatisfiable, kUnsatisfiable, kUnknown };

std::string_view StatusName(Status s);

struct SolverOptions {
  std::uint64_t seed = 0;
  bool log_proof = false;
  // Conflicts allowed per Solve call; unset means unlimited.
  std::optional<std::int64_t> conflict_budget;
  // Learned clauses kept before the first database reduction. Zero picks a
  // size-dependent default.
  int first_reduce = 0;
  int restart_unit = 100;
  double var_decay = 0.95;
};

struct SolveOutcome {
  Status status = Status::kUnknown;
  // Present iff status is kSatisfiable; covers every solver variable.
  std::optional<Assignment> model;
  // Present iff status is kUnsatisfiable and assumptions were given. A subset
  // of the assumptions that is already inconsistent with the formula (empty
  // when the formula alone is unsatisfiable).
  std::optional<std::vector<Literal>> core;
  // Present iff status is kUnsatisfiable and proof logging is on. Refutes the
  // formula extended with unit clauses for the core literals.
  std::optional<ProofTrace> proof;
};

class ContractError : public Error {
 public:
  using Error::Error;
};

// Conflict-driven clause-learning engine: two watched literals, first-UIP
// learning with local minimisation, VSIDS, phase saving, Luby restarts and
// activity-based learned clause deletion. Incremental across Solve calls;
// clauses may only be added between calls.
class Solver {
 public:
  explicit Solver(int num_vars, SolverOptions options = {});
  ~Solver();
  Solver(Solver&&) noexcept;
  Solver& operator=(Solver&&) noexcept;

  int num_vars() const;
  // Extends the variable range; returns the new count.
  int AddVars(int count);
  void AddClause(std::span<const Literal> clause);
  SolveOutcome Solve(std::span<const Literal> assumptions = {});

  std::int64_t conflicts() const;
  std::int64_t decisions() const;
  std::int64_t deleted_learnts() const;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot convenience wrapper around Solver.
SolveOutcome Solve(const CnfFormula& f, std::span<const Literal> assumptions,
                   const SolverOptions& options = {});

// The assumption subset of an unsatisfiable outcome. Throws ContractError when
// the outcome is not unsatisfiable or carries no core.
std::vector<Literal> ExtractCore(const SolveOutcome& outcome);

// Textual DRUP: one step per line, literals as signed decimals terminated by
// 0, deletions prefixed by "d ". LF line endings.
void WriteProof(const ProofTrace& proof, std::ostream& sink);
std::string ProofToString(const ProofTrace& proof);

}  // namespace maxcert::sat

#endif  // MAXCERT_SATCORE_H_
