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

#ifndef MAXCERT_CLI_H_
#define MAXCERT_CLI_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "maxcert/certs.h"
#include "maxcert/formula.h"

namespace maxcert {

inline constexpr int kOracleMaxVars = 20;

// Exhaustive optimum over all 2^num_vars assignments; nullopt when the hard
// clauses are unsatisfiable. Throws RangeError above kOracleMaxVars.
std::optional<int> BruteForceOptimum(const WcnfInstance& inst);

struct GenParams {
  int vars = 8;
  int hard = 5;
  int soft = 12;
  int width = 2;
  std::uint64_t seed = 0;
};

// Random instance whose hard part is satisfiable. Hard clauses have exactly
// `width` distinct variables, soft clauses 1..width. Deterministic per seed.
WcnfInstance GenerateInstance(const GenParams& p);

struct BenchRow {
  std::string instance;
  std::optional<int> optimum;
  int iterations = 0;
  int unsat_iterations = 0;
  double solve_plain_ms = 0;
  double solve_cert_ms = 0;
  double check_all_ms = 0;
  double check_one_ms = 0;
  bool verdicts_valid = false;
  // check-one < check-all; with at most one UNSAT iteration the two differ
  // by less than 20% of check-all instead.
  bool ordering_holds = false;
};

struct BenchOptions {
  Algorithm algorithm = Algorithm::kLinearUnsatSat;
  std::uint64_t seed = 0;
  int repeat = 5;  // timing batches; the minimum is reported
};

BenchRow BenchInstance(const std::string& name, const std::string& wcnf_bytes,
                       const BenchOptions& options);
std::vector<BenchRow> RunBench(const std::filesystem::path& corpus, const BenchOptions& options);

std::string BenchTsv(const std::vector<BenchRow>& rows);
std::string BenchJson(const std::vector<BenchRow>& rows);

// Minimum over `batches` of the per-call wall time (ms) of `fn`, each batch
// repeating it for at least one millisecond.
double MinTimeMs(const std::function<void()>& fn, int batches);

// Entry point shared by the executable and the tests. `args` excludes the
// program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace maxcert

#endif  // MAXCERT_CLI_H_
