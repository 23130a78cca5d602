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

#ifndef MAXCERT_CERTS_H_
#define MAXCERT_CERTS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxcert/formula.h"

namespace maxcert {

enum class Algorithm { kLinearUnsatSat, kLinearSatUnsat, kBinarySearch, kMsu3 };
enum class CertMode { kAll, kLast };
enum class IterationStatus { kSatisfiable, kUnsatisfiable };
// Which bound an iteration tests: lower (lambda), upper (mu) or midpoint (tau).
enum class BoundKind { kLambda, kMu, kTau };

std::string_view AlgorithmName(Algorithm a);  // lsus | lssu | binary | msu3
std::optional<Algorithm> ParseAlgorithm(std::string_view name);
std::string_view CertModeName(CertMode m);  // all | last
std::optional<CertMode> ParseCertMode(std::string_view name);

inline constexpr int kManifestFormatVersion = 1;

// Assignment reported for one satisfiable iteration.
struct SatCertificate {
  int iteration = 0;
  int bound = 0;
  Assignment assignment;
};

// Reference to the DRUP refutation of one unsatisfiable iteration.
struct UnsatCertificate {
  int iteration = 0;
  int bound = 0;
  std::string proof_file;
};

// DRUP refutation of the all-soft-relaxed instance with sum(r) < optimum.
struct MinimalityCertificate {
  int optimum = 0;
  int aux_base = 0;
  std::string proof_file;
};

struct IterationRecord {
  int index = 0;  // 1-based
  BoundKind bound_kind = BoundKind::kLambda;
  int bound = 0;
  IterationStatus status = IterationStatus::kUnsatisfiable;
  // First cardinality auxiliary variable of this iteration's instance.
  int aux_base = 0;
  // Satisfiable iterations: number of relaxation variables the model sets.
  std::optional<int> relaxed_true;
  // msu3 unsatisfiable iterations: soft_ids relaxed after this iteration, in
  // relaxation-variable order.
  std::vector<int> newly_relaxed;
  // Certificates retained for this iteration (at most one is set).
  std::optional<std::vector<int>> model;  // DIMACS literals, total
  std::optional<std::string> proof_file;

  bool has_certificate() const { return model.has_value() || proof_file.has_value(); }
  bool operator==(const IterationRecord&) const = default;
};

// Outcome of solving the hard clauses alone.
struct HardFeasibilityRecord {
  IterationStatus status = IterationStatus::kSatisfiable;
  std::optional<std::vector<int>> model;  // over problem variables
  std::optional<std::string> proof_file;
  bool operator==(const HardFeasibilityRecord&) const = default;
};

struct MinimalityRecord {
  int optimum = 0;
  int aux_base = 0;
  std::string proof_file;
  bool operator==(const MinimalityRecord&) const = default;
};

// Everything a checker needs to rebuild and validate a run.
struct RunManifest {
  int format_version = kManifestFormatVersion;
  std::string instance_file = "instance.wcnf";
  std::string instance_sha256;
  int num_vars = 0;
  int num_hard = 0;
  int num_soft = 0;
  Algorithm algorithm = Algorithm::kLinearUnsatSat;
  CertMode cert_mode = CertMode::kAll;
  std::string encoding{"sequential_counter"};
  std::uint64_t seed = 0;
  // Relaxation variables start here (num_vars + 1).
  int relaxation_base = 0;
  HardFeasibilityRecord hard_feasibility;
  std::vector<IterationRecord> iterations;
  std::optional<MinimalityRecord> minimality;
  // Unset means the hard clauses are infeasible.
  std::optional<int> optimum;

  bool operator==(const RunManifest&) const = default;
};

// Number of certificates retained (iterations only).
int CountCertificates(const RunManifest& m);

// A run bundle held in memory: the instance, its raw bytes, the manifest and
// every referenced proof file's text.
struct Bundle {
  WcnfInstance instance;
  std::string instance_bytes;
  RunManifest manifest;
  std::map<std::string, std::string> proofs;
};

class BundleError : public Error {
 public:
  enum class Kind { kIo, kSchema, kDigestMismatch, kDanglingReference, kNotEmpty };
  BundleError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string Sha256Hex(std::string_view bytes);

// Stable JSON (sorted keys, two-space indent, trailing newline).
std::string ManifestToJson(const RunManifest& m);
// Throws BundleError(kSchema).
RunManifest ManifestFromJson(std::string_view json);

// Writes manifest.json, instance.wcnf and every proof file. The manifest's
// digest is taken from bundle.instance_bytes. Refuses a non-empty directory
// unless `force` is set, in which case only bundle files are replaced.
void WriteBundle(const Bundle& bundle, const std::filesystem::path& dir, bool force = false);

// Structural validation only: schema, digest, instance consistency and
// reference resolution.
Bundle ReadBundle(const std::filesystem::path& dir);

// Structural checks shared by ReadBundle and in-memory consumers. Throws
// BundleError.
void ValidateBundleStructure(const Bundle& bundle);

// Canonical working formula with every soft clause relaxed: hard clauses
// first, then (soft_i v r_i) with r_i = num_vars + i.
struct RelaxedFormula {
  CnfFormula formula;
  std::vector<Literal> relaxation;  // r_i in relaxation order
};
RelaxedFormula BuildAllRelaxed(const WcnfInstance& inst);

// Working formula where only `relaxed_ids` (in relaxation order) carry
// relaxation variables num_vars + 1, num_vars + 2, ...
RelaxedFormula BuildPartiallyRelaxed(const WcnfInstance& inst, const std::vector<int>& relaxed_ids);

// Soft ids relaxed before iteration `index` of an msu3 run, in relaxation
// order. Throws BundleError(kSchema) on out-of-range or repeated ids.
std::vector<int> RelaxedBefore(const RunManifest& m, int index);

class ReconstructionError : public Error {
 public:
  using Error::Error;
};

// The CNF solved at iteration `index` (1-based): working formula plus the
// cardinality encoding at the recorded bound and auxiliary base.
struct IterationInstance {
  CnfFormula formula;
  std::vector<Literal> relaxation;
};
IterationInstance ReconstructIteration(const WcnfInstance& inst, const RunManifest& m, int index);
CnfFormula ReconstructInstance(const WcnfInstance& inst, const RunManifest& m, int index);

// The all-relaxed instance with sum(r) < optimum used by the minimality test.
IterationInstance BuildMinimalityInstance(const WcnfInstance& inst, int optimum);

}  // namespace maxcert

#endif  // MAXCERT_CERTS_H_
