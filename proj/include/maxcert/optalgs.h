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

#ifndef MAXCERT_OPTALGS_H_
#define MAXCERT_OPTALGS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "maxcert/certs.h"
#include "maxcert/formula.h"
#include "maxcert/satcore.h"

namespace maxcert {

struct RunOptions {
  CertMode cert_mode = CertMode::kAll;
  // When false nothing is logged or retained; the manifest still records
  // every iteration. Used as the timing baseline.
  bool generate_certificates = true;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> conflict_budget;
  // Called with every instance handed to the SAT engine (selector variables
  // excluded).
  std::function<void(int index, const CnfFormula&)> on_iteration;
};

struct RunResult {
  std::optional<int> optimum;  // unset: hard clauses infeasible
  RunManifest manifest;
  std::map<std::string, std::string> proofs;

  const std::vector<IterationRecord>& iterations() const { return manifest.iterations; }
};

// Solver invariant broken; a sound engine never triggers it.
class InternalError : public Error {
 public:
  using Error::Error;
};

// The conflict budget ran out before an answer was found.
class SolverLimitError : public Error {
 public:
  using Error::Error;
};

// soft_id -> relaxation variable.
struct RelaxationMap {
  std::map<int, int> entries;
  int next_fresh = 1;

  std::vector<Literal> Literals() const;  // in relaxation-variable order
};

// (soft_i v r_i) for every soft clause with r_i = num_vars + i; hard clauses
// first, unrelaxed.
std::pair<CnfFormula, RelaxationMap> RelaxAll(const WcnfInstance& inst);

// Hard clauses alone, with proof logging.
sat::SolveOutcome CheckHardFeasible(const WcnfInstance& inst, const RunOptions& options = {});

RunResult LinearSearchUnsatSat(const WcnfInstance& inst, const RunOptions& options = {});
RunResult LinearSearchSatUnsat(const WcnfInstance& inst, const RunOptions& options = {});
RunResult BinarySearch(const WcnfInstance& inst, const RunOptions& options = {});
RunResult Msu3(const WcnfInstance& inst, const RunOptions& options = {});
RunResult RunAlgorithm(Algorithm alg, const WcnfInstance& inst, const RunOptions& options = {});

// Rewrites a refutation of `formula + selector units` into one of the formula
// with every selector fixed to true: negative selector literals are dropped,
// the trace ends at the first empty clause. Selectors are the variables above
// `num_vars`.
ProofTrace ProjectSelectors(const ProofTrace& proof, int num_vars);

// Packages a run for the checker; the digest is computed from `instance_bytes`.
Bundle MakeBundle(const RunResult& result, const WcnfInstance& inst, std::string instance_bytes);

}  // namespace maxcert

#endif  // MAXCERT_OPTALGS_H_
