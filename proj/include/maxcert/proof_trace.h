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

#ifndef MAXCERT_PROOF_TRACE_H_
#define MAXCERT_PROOF_TRACE_H_

#include <vector>

#include "maxcert/formula.h"

namespace maxcert {

// One line of a clausal (DRUP) refutation.
struct ProofStep {
  enum class Kind { kAdd, kDelete };
  Kind kind = Kind::kAdd;
  Clause clause;

  static ProofStep Add(Clause c) { return {Kind::kAdd, std::move(c)}; }
  static ProofStep Delete(Clause c) { return {Kind::kDelete, std::move(c)}; }
  bool operator==(const ProofStep&) const = default;
};

// Ordered clause additions and deletions. A complete refutation ends with the
// addition of the empty clause.
struct ProofTrace {
  std::vector<ProofStep> steps;

  bool empty() const { return steps.empty(); }
  bool EndsWithEmptyClause() const {
    return !steps.empty() && steps.back().kind == ProofStep::Kind::kAdd &&
           steps.back().clause.empty();
  }
  bool operator==(const ProofTrace&) const = default;
};

}  // namespace maxcert

#endif  // MAXCERT_PROOF_TRACE_H_
