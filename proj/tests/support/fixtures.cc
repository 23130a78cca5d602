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

#include "fixtures.h"

#include <random>
#include <sstream>

#include "maxcert/cli.h"
#include "reference_rup.h"

namespace maxcert::testing {

std::string FiveCycleText() {
  return "c five-cycle\n"
         "p wcnf 5 10 6\n"
         "6 1 2 0\n6 2 3 0\n6 3 4 0\n6 4 5 0\n6 1 5 0\n"
         "1 -1 0\n1 -2 0\n1 -3 0\n1 -4 0\n1 -5 0\n";
}

WcnfInstance FiveCycle() { return ParseWcnf(FiveCycleText()); }

std::string UnitAndEmptyText() { return "p cnf 1 2\n1 0\n0\n"; }

Bundle BuggyMsu3Bundle(bool all_true_model) {
  Bundle b;
  b.instance_bytes = UnitAndEmptyText();
  b.instance = ParseWcnf(b.instance_bytes);
  RunManifest& m = b.manifest;
  m.instance_sha256 = Sha256Hex(b.instance_bytes);
  m.num_vars = 1;
  m.num_hard = 0;
  m.num_soft = 2;
  m.algorithm = Algorithm::kMsu3;
  m.cert_mode = CertMode::kAll;
  m.relaxation_base = 2;
  m.hard_feasibility.status = IterationStatus::kSatisfiable;
  m.hard_feasibility.model = std::vector<int>{1};

  IterationRecord it1;
  it1.index = 1;
  it1.bound = 0;
  it1.status = IterationStatus::kUnsatisfiable;
  it1.aux_base = 2;
  it1.newly_relaxed = {1};
  it1.proof_file = "proof_1.drup";

  IterationRecord it2;
  it2.index = 2;
  it2.bound = 1;
  it2.status = IterationStatus::kUnsatisfiable;
  it2.aux_base = 3;
  it2.newly_relaxed = {2};
  it2.proof_file = "proof_2.drup";

  IterationRecord it3;
  it3.index = 3;
  it3.bound = 2;
  it3.status = IterationStatus::kSatisfiable;
  it3.aux_base = 4;
  it3.relaxed_true = 2;
  it3.model = all_true_model ? std::vector<int>{1, 2, 3} : std::vector<int>{-1, 2, 3};

  m.iterations = {it1, it2, it3};
  m.minimality = MinimalityRecord{2, 4, "proof_minimality.drup"};
  m.optimum = 2;

  // Both unsatisfiable instances still contain the empty clause, so "0"
  // refutes them. No refutation of the minimality instance exists.
  b.proofs["proof_1.drup"] = "0\n";
  b.proofs["proof_2.drup"] = "0\n";
  b.proofs["proof_minimality.drup"] = "-2 0\n0\n";
  return b;
}

Bundle SolveToBundle(const std::string& wcnf, Algorithm alg, CertMode mode, std::uint64_t seed) {
  const WcnfInstance inst = ParseWcnf(wcnf);
  RunOptions options;
  options.cert_mode = mode;
  options.seed = seed;
  return MakeBundle(RunAlgorithm(alg, inst, options), inst, wcnf);
}

std::vector<CorpusEntry> RandomCorpus(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusEntry> out;
  for (int i = 0; i < count; ++i) {
    CorpusEntry e;
    // Parameters whose hard part keeps failing rejection sampling are redrawn.
    for (bool generated = false; !generated;) {
      GenParams p;
      p.vars = std::uniform_int_distribution<int>(3, 12)(rng);
      p.width = std::uniform_int_distribution<int>(1, std::min(3, p.vars))(rng);
      const int clauses = std::uniform_int_distribution<int>(4, 30)(rng);
      p.hard = std::uniform_int_distribution<int>(0, clauses / 2)(rng);
      p.soft = clauses - p.hard;
      p.seed = rng();
      try {
        e.instance = GenerateInstance(p);
        generated = true;
      } catch (const Error&) {
      }
    }
    e.text = FormatWcnf(e.instance);
    e.name = "rand_" + std::to_string(i);
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

const IterationRecord* LastOf(const RunManifest& m, IterationStatus s) {
  for (auto it = m.iterations.rbegin(); it != m.iterations.rend(); ++it) {
    if (it->status == s) return &*it;
  }
  return nullptr;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::string Join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

// The proof mutant whose reference verdict is INVALID, scanning candidates
// from the end of the proof.
bool ProofMutant(const Bundle& honest, const IterationRecord& it, bool swap, Mutant* out) {
  const CnfFormula f = ReconstructInstance(honest.instance, honest.manifest, it.index);
  const std::vector<std::string> lines = Lines(honest.proofs.at(*it.proof_file));
  std::vector<int> order;
  if (swap) {
    for (int i = static_cast<int>(lines.size()) - 2; i >= 0; --i) order.push_back(i);
  } else {
    // The final line goes last.
    for (int i = static_cast<int>(lines.size()) - 2; i >= 0; --i) order.push_back(i);
    order.push_back(static_cast<int>(lines.size()) - 1);
  }
  for (int i : order) {
    std::vector<std::string> mutated = lines;
    if (swap) {
      std::swap(mutated[static_cast<std::size_t>(i)], mutated[static_cast<std::size_t>(i) + 1]);
    } else {
      mutated.erase(mutated.begin() + i);
    }
    const std::string text = Join(mutated);
    const ReferenceOutcome ref = ReferenceCheck(f, ParseDrup(text).trace);
    if (ref.valid) continue;
    out->mutation_class = swap ? "swap_proof_lines" : "delete_proof_line";
    out->bundle = honest;
    out->bundle.proofs[*it.proof_file] = text;
    out->expected = *ref.reason;
    return true;
  }
  return false;
}

}  // namespace

std::vector<Mutant> MutationSuite(const Bundle& honest) {
  std::vector<Mutant> out;
  const RunManifest& m = honest.manifest;
  if (!m.optimum) return out;
  const int optimum = *m.optimum;

  if (const IterationRecord* sat = LastOf(m, IterationStatus::kSatisfiable)) {
    const CnfFormula f = ReconstructInstance(honest.instance, m, sat->index);
    const Assignment a = Assignment::FromDimacs(*sat->model, f.num_vars);
    // A variable that is the only support of some clause.
    int critical = 0;
    for (const Clause& c : f.clauses) {
      int support = 0;
      int count = 0;
      for (Literal l : c) {
        if (a.satisfies(l)) {
          support = l.var();
          ++count;
        }
      }
      if (count == 1) {
        critical = support;
        break;
      }
    }
    if (critical != 0) {
      Mutant mu{"flip_model_bit", honest, Reason::kSatCertFalsifiesClause};
      IterationRecord& target = mu.bundle.manifest.iterations[static_cast<std::size_t>(sat->index - 1)];
      for (int& d : *target.model) {
        if (std::abs(d) == critical) d = -d;
      }
      out.push_back(std::move(mu));
    }
  }

  {
    Mutant mu{"optimum_plus_one", honest, Reason::kOptimumMismatch};
    mu.bundle.manifest.optimum = optimum + 1;
    out.push_back(std::move(mu));
  }
  if (optimum >= 1) {
    Mutant mu{"optimum_minus_one", honest, Reason::kOptimumMismatch};
    mu.bundle.manifest.optimum = optimum - 1;
    out.push_back(std::move(mu));
  }

  if (const IterationRecord* unsat = LastOf(m, IterationStatus::kUnsatisfiable)) {
    Mutant mu{"change_unsat_bound", honest, Reason::kStructureError};
    mu.bundle.manifest.iterations[static_cast<std::size_t>(unsat->index - 1)].bound += 1;
    out.push_back(std::move(mu));

    Mutant del;
    if (ProofMutant(honest, *unsat, false, &del)) out.push_back(std::move(del));
    Mutant swp;
    if (ProofMutant(honest, *unsat, true, &swp)) out.push_back(std::move(swp));
  }

  if (m.minimality) {
    Mutant mu{"drop_minimality", honest, Reason::kStructureError};
    mu.bundle.proofs.erase(mu.bundle.manifest.minimality->proof_file);
    mu.bundle.manifest.minimality.reset();
    out.push_back(std::move(mu));
  }
  return out;
}

}  // namespace maxcert::testing
