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

#ifndef MAXCERT_TESTS_SUPPORT_FIXTURES_H_
#define MAXCERT_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "maxcert/certs.h"
#include "maxcert/checker.h"
#include "maxcert/formula.h"
#include "maxcert/optalgs.h"

namespace maxcert::testing {

// Five-cycle vertex cover: hard (xi v xi+1), soft (~xi). Optimum 3.
std::string FiveCycleText();
WcnfInstance FiveCycle();

// Pure MaxSAT {(x), ()}. Optimum 1.
std::string UnitAndEmptyText();

// Hand-made bundle replaying the faulty core-guided run on {(x), ()}: cores
// {(x)} then {()}, final model at lambda = 2. With `all_true_model` the final
// model is x = r1 = r2 = 1; otherwise x = 0, r1 = r2 = 1, whose falsified
// count matches the wrong optimum.
Bundle BuggyMsu3Bundle(bool all_true_model = false);

Bundle SolveToBundle(const std::string& wcnf, Algorithm alg, CertMode mode = CertMode::kAll,
                     std::uint64_t seed = 0);

struct CorpusEntry {
  std::string name;
  std::string text;
  WcnfInstance instance;
};

// Random instances with at most 12 variables and 30 clauses, mixed hard and
// soft, every hard part satisfiable. Deterministic in `seed`.
std::vector<CorpusEntry> RandomCorpus(int count, std::uint64_t seed);

struct Mutant {
  std::string mutation_class;
  Bundle bundle;
  Reason expected;
};

// Single semantic mutations of an honest ALL bundle. Every mutation touches
// data that both checking methods read.
std::vector<Mutant> MutationSuite(const Bundle& honest);

inline const std::vector<std::string>& MutationClasses() {
  static const std::vector<std::string> kClasses{
      "flip_model_bit", "optimum_plus_one", "optimum_minus_one", "change_unsat_bound",
      "delete_proof_line", "swap_proof_lines", "drop_minimality"};
  return kClasses;
}

}  // namespace maxcert::testing

#endif  // MAXCERT_TESTS_SUPPORT_FIXTURES_H_
