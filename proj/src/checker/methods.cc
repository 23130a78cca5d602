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

#include <algorithm>

#include "maxcert/checker.h"

namespace maxcert {

namespace {

Verdict Structure(const std::string& message, Witness w = {}) {
  return Verdict::Invalid(Reason::kStructureError, message, std::move(w));
}

Witness AtIteration(int index) {
  Witness w;
  w.iteration = index;
  return w;
}

Verdict Tag(Verdict v, int iteration, const std::optional<std::string>& file = std::nullopt) {
  if (!v.valid) {
    v.witness.iteration = iteration;
    if (file && !v.witness.file) v.witness.file = file;
  }
  return v;
}

int CountTrue(std::span<const int> model, std::span<const Literal> lits) {
  // Model literals are validated by the caller; index by variable.
  std::vector<int> value(model.size() + 1, 0);
  for (int d : model) value[static_cast<std::size_t>(std::abs(d))] = d > 0 ? 1 : -1;
  int n = 0;
  for (Literal l : lits) {
    const auto v = static_cast<std::size_t>(l.var());
    if (v < value.size() && value[v] == (l.negated() ? -1 : 1)) ++n;
  }
  return n;
}

std::string Iter(const IterationRecord& it) { return "iteration " + std::to_string(it.index); }

Verdict TransitionsLinearUnsatSat(const RunManifest& m) {
  const auto& its = m.iterations;
  if (its.empty()) return Structure("no iterations recorded");
  for (std::size_t i = 0; i < its.size(); ++i) {
    const IterationRecord& it = its[i];
    const bool last = i + 1 == its.size();
    if (it.bound_kind != BoundKind::kLambda || it.bound != static_cast<int>(i)) {
      return Structure(Iter(it) + " tests bound " + std::to_string(it.bound) + ", expected lambda = " +
                           std::to_string(i),
                       AtIteration(it.index));
    }
    if ((it.status == IterationStatus::kSatisfiable) != last) {
      return Structure(Iter(it) + ": only the final iteration may be satisfiable",
                       AtIteration(it.index));
    }
  }
  if (*m.optimum != its.back().bound) {
    return Verdict::Invalid(Reason::kOptimumMismatch,
                            "reported optimum " + std::to_string(*m.optimum) +
                                " but the run ended satisfiable at lambda = " +
                                std::to_string(its.back().bound));
  }
  return Verdict::Valid();
}

Verdict TransitionsLinearSatUnsat(const RunManifest& m) {
  const auto& its = m.iterations;
  if (its.empty()) return Structure("no iterations recorded");
  int expected_bound = m.num_soft;
  int mu = m.num_soft;
  for (std::size_t i = 0; i < its.size(); ++i) {
    const IterationRecord& it = its[i];
    const bool last = i + 1 == its.size();
    if (it.bound_kind != BoundKind::kMu || it.bound != expected_bound) {
      return Structure(Iter(it) + " tests bound " + std::to_string(it.bound) + ", expected mu = " +
                           std::to_string(expected_bound),
                       AtIteration(it.index));
    }
    if (it.status == IterationStatus::kUnsatisfiable) {
      if (!last) return Structure(Iter(it) + ": run continued after an unsatisfiable bound",
                                  AtIteration(it.index));
      if (i == 0) return Structure("the vacuous first bound cannot be unsatisfiable", AtIteration(it.index));
      break;
    }
    const int rt = it.relaxed_true.value_or(-1);
    if (rt < 0 || rt > it.bound) {
      return Structure(Iter(it) + ": relaxed_true outside 0..bound", AtIteration(it.index));
    }
    mu = rt;
    if (rt == 0 && !last) return Structure(Iter(it) + ": run continued after mu = 0", AtIteration(it.index));
    if (rt > 0 && last) return Structure(Iter(it) + ": run stopped with mu > 0 and no unsatisfiable bound",
                                         AtIteration(it.index));
    expected_bound = rt - 1;
  }
  if (*m.optimum != mu) {
    return Verdict::Invalid(Reason::kOptimumMismatch, "reported optimum " + std::to_string(*m.optimum) +
                                                          " but the last satisfiable mu is " +
                                                          std::to_string(mu));
  }
  return Verdict::Valid();
}

Verdict TransitionsBinary(const RunManifest& m) {
  const auto& its = m.iterations;
  int mu = m.num_soft;
  int lambda = -1;
  std::size_t i = 0;
  while (mu > lambda + 1) {
    if (i >= its.size()) {
      return Structure("run ended with mu = " + std::to_string(mu) + ", lambda = " +
                       std::to_string(lambda));
    }
    const IterationRecord& it = its[i++];
    const int tau = (mu + lambda) / 2;
    if (it.bound_kind != BoundKind::kTau || it.bound != tau) {
      return Structure(Iter(it) + " tests bound " + std::to_string(it.bound) + ", expected tau = " +
                           std::to_string(tau),
                       AtIteration(it.index));
    }
    if (it.status == IterationStatus::kSatisfiable) {
      const int rt = it.relaxed_true.value_or(-1);
      if (rt < 0 || rt > tau) {
        return Structure(Iter(it) + ": relaxed_true outside 0..tau", AtIteration(it.index));
      }
      mu = rt;
    } else {
      lambda = tau;
    }
  }
  if (i != its.size()) {
    return Structure("iterations recorded after mu = lambda + 1", AtIteration(its[i].index));
  }
  if (*m.optimum != mu) {
    return Verdict::Invalid(Reason::kOptimumMismatch, "reported optimum " + std::to_string(*m.optimum) +
                                                          " but the search ended at mu = " +
                                                          std::to_string(mu));
  }
  return Verdict::Valid();
}

Verdict TransitionsMsu3(const RunManifest& m) {
  const auto& its = m.iterations;
  if (its.empty()) return Structure("no iterations recorded");
  for (std::size_t i = 0; i < its.size(); ++i) {
    const IterationRecord& it = its[i];
    const bool last = i + 1 == its.size();
    if (it.bound_kind != BoundKind::kLambda || it.bound != static_cast<int>(i)) {
      return Structure(Iter(it) + " tests bound " + std::to_string(it.bound) + ", expected lambda = " +
                           std::to_string(i),
                       AtIteration(it.index));
    }
    if ((it.status == IterationStatus::kSatisfiable) != last) {
      return Structure(Iter(it) + ": only the final iteration may be satisfiable",
                       AtIteration(it.index));
    }
    if (last != it.newly_relaxed.empty()) {
      return Structure(Iter(it) + (last ? ": satisfiable iteration relaxes clauses"
                                        : ": unsatisfiable iteration relaxes nothing"),
                       AtIteration(it.index));
    }
  }
  try {
    RelaxedBefore(m, static_cast<int>(its.size()) + 1);
  } catch (const BundleError& e) {
    return Structure(e.what());
  }
  if (*m.optimum != its.back().bound) {
    return Verdict::Invalid(Reason::kOptimumMismatch,
                            "reported optimum " + std::to_string(*m.optimum) +
                                " but the run ended satisfiable at lambda = " +
                                std::to_string(its.back().bound));
  }
  return Verdict::Valid();
}

// The model's problem-variable part as a total assignment.
std::optional<Assignment> ProblemAssignment(std::span<const int> model, int num_vars) {
  std::vector<int> lits;
  for (int d : model) {
    if (std::abs(d) <= num_vars) lits.push_back(d);
  }
  try {
    return Assignment::FromDimacs(lits, num_vars);
  } catch (const RangeError&) {
    return std::nullopt;
  }
}

Verdict CheckIteration(const Bundle& b, const IterationRecord& it, bool final_sat) {
  IterationInstance inst;
  try {
    inst = ReconstructIteration(b.instance, b.manifest, it.index);
  } catch (const Error& e) {
    return Structure(e.what(), AtIteration(it.index));
  }
  if (it.status == IterationStatus::kSatisfiable) {
    if (!it.model) return Structure(Iter(it) + " has no model", AtIteration(it.index));
    Verdict v = CheckSatCertificate(inst.formula, *it.model, inst.relaxation, it.bound);
    if (!v.valid) return Tag(std::move(v), it.index);
    const int count = CountTrue(*it.model, inst.relaxation);
    if (it.relaxed_true != count) {
      return Verdict::Invalid(Reason::kSatCertBoundMismatch,
                              "model sets " + std::to_string(count) +
                                  " relaxation variables, manifest records " +
                                  std::to_string(it.relaxed_true.value_or(-1)),
                              AtIteration(it.index));
    }
    if (final_sat) {
      return Tag(CheckFinalCost(b.instance, *it.model, *b.manifest.optimum), it.index);
    }
    return Verdict::Valid();
  }
  if (!it.proof_file) return Structure(Iter(it) + " has no proof", AtIteration(it.index));
  auto text = b.proofs.find(*it.proof_file);
  if (text == b.proofs.end()) {
    return Structure("missing proof file " + *it.proof_file, AtIteration(it.index));
  }
  return Tag(CheckUnsatCertificate(inst.formula, text->second), it.index, it.proof_file);
}

// The hard-feasibility record; with `cost`, its model must also realise the
// optimum.
Verdict CheckHardRecord(const Bundle& b, std::optional<int> cost) {
  const HardFeasibilityRecord& h = b.manifest.hard_feasibility;
  const CnfFormula hard{b.instance.num_vars, b.instance.hard};
  if (h.status == IterationStatus::kUnsatisfiable) {
    if (!h.proof_file) return Structure("hard feasibility lacks a proof", AtIteration(0));
    auto text = b.proofs.find(*h.proof_file);
    if (text == b.proofs.end()) return Structure("missing proof file " + *h.proof_file, AtIteration(0));
    return Tag(CheckUnsatCertificate(hard, text->second), 0, h.proof_file);
  }
  if (!h.model) return Structure("hard feasibility lacks a model", AtIteration(0));
  Verdict v = CheckSatCertificate(hard, *h.model, {}, 0);
  if (!v.valid || !cost) return Tag(std::move(v), 0);
  return Tag(CheckFinalCost(b.instance, *h.model, *cost), 0);
}

const IterationRecord* LastWithStatus(const RunManifest& m, IterationStatus s) {
  for (auto it = m.iterations.rbegin(); it != m.iterations.rend(); ++it) {
    if (it->status == s) return &*it;
  }
  return nullptr;
}

std::optional<std::string> MinimalityProof(const Bundle& b) {
  if (!b.manifest.minimality) return std::nullopt;
  auto it = b.proofs.find(b.manifest.minimality->proof_file);
  if (it == b.proofs.end()) return std::nullopt;
  return it->second;
}

}  // namespace

Verdict CheckSatCertificate(const CnfFormula& f, std::span<const int> model,
                            std::span<const Literal> relaxation, int expected_bound) {
  Assignment a;
  try {
    a = Assignment::FromDimacs(model, f.num_vars);
  } catch (const RangeError& e) {
    return Structure(std::string("assignment is not total: ") + e.what());
  }
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    bool sat = false;
    for (Literal l : f.clauses[i]) {
      if (l.var() > f.num_vars) return Structure("clause literal outside the assignment range");
      if (a.satisfies(l)) {
        sat = true;
        break;
      }
    }
    if (!sat) {
      Witness w;
      w.clause_index = static_cast<int>(i);
      w.assignment = std::vector<int>(model.begin(), model.end());
      return Verdict::Invalid(Reason::kSatCertFalsifiesClause,
                              "clause " + std::to_string(i) + " " + ClauseToString(f.clauses[i]) +
                                  " is falsified",
                              std::move(w));
    }
  }
  int count = 0;
  for (Literal l : relaxation) {
    if (l.var() > f.num_vars) return Structure("relaxation variable outside the assignment range");
    count += a.satisfies(l) ? 1 : 0;
  }
  if (count > expected_bound) {
    return Verdict::Invalid(Reason::kSatCertBoundMismatch,
                            std::to_string(count) + " relaxation variables true, bound is " +
                                std::to_string(expected_bound));
  }
  return Verdict::Valid();
}

Verdict CheckFinalCost(const WcnfInstance& inst, std::span<const int> model, int optimum) {
  const std::optional<Assignment> a = ProblemAssignment(model, inst.num_vars);
  if (!a) return Structure("model does not assign every problem variable");
  int falsified = 0;
  try {
    falsified = CountFalsifiedSoft(inst, *a);
  } catch (const HardClauseViolation& e) {
    Witness w;
    w.clause_index = static_cast<int>(e.clause_index());
    w.assignment = a->ToDimacs();
    return Verdict::Invalid(Reason::kSatCertFalsifiesClause, e.what(), std::move(w));
  }
  if (falsified != optimum) {
    Witness w;
    w.assignment = a->ToDimacs();
    return Verdict::Invalid(Reason::kSatCertCostMismatch,
                            "model falsifies " + std::to_string(falsified) +
                                " soft clauses, reported optimum is " + std::to_string(optimum),
                            std::move(w));
  }
  return Verdict::Valid();
}

Verdict CheckMinimality(const WcnfInstance& inst, const RunManifest& m,
                        const std::optional<std::string>& proof_text) {
  if (m.algorithm != Algorithm::kMsu3 || !m.optimum) return Verdict::Valid();
  const int optimum = *m.optimum;
  if (optimum == 0) {
    if (m.minimality) return Structure("minimality certificate recorded for optimum 0");
    return Verdict::Valid();
  }
  if (!m.minimality) return Structure("missing minimality certificate");
  if (m.minimality->optimum != optimum) {
    return Structure("minimality certificate is for optimum " +
                     std::to_string(m.minimality->optimum));
  }
  IterationInstance mi;
  try {
    mi = BuildMinimalityInstance(inst, optimum);
  } catch (const Error& e) {
    return Structure(e.what());
  }
  const int base = inst.num_vars + static_cast<int>(inst.soft.size()) + 1;
  if (m.minimality->aux_base != base) {
    return Structure("minimality aux_base must be " + std::to_string(base));
  }
  if (!proof_text) return Structure("missing proof file " + m.minimality->proof_file);
  Verdict v = CheckUnsatCertificate(mi.formula, *proof_text);
  if (v.valid) return Verdict::Valid(1);
  if (v.reason == Reason::kStructureError) return v;
  v.witness.file = m.minimality->proof_file;
  return Verdict::Invalid(Reason::kMinimalityRefuted,
                          "optimum " + std::to_string(optimum) + " is not shown minimal: " +
                              v.message,
                          v.witness);
}

Verdict CheckTransitions(const RunManifest& m) {
  const IterationStatus hard = m.hard_feasibility.status;
  if (!m.optimum) {
    if (hard != IterationStatus::kUnsatisfiable) {
      return Structure("infeasible result but the hard clauses are recorded satisfiable");
    }
    if (!m.iterations.empty() || m.minimality) {
      return Structure("infeasible result with optimisation records");
    }
    return Verdict::Valid();
  }
  if (hard != IterationStatus::kSatisfiable) {
    return Structure("optimum reported but the hard clauses are recorded unsatisfiable");
  }
  if (m.minimality && m.algorithm != Algorithm::kMsu3) {
    return Structure("minimality certificate recorded for a non-core-guided run");
  }
  for (const IterationRecord& it : m.iterations) {
    if (m.algorithm != Algorithm::kMsu3 && !it.newly_relaxed.empty()) {
      return Structure(Iter(it) + ": newly_relaxed outside msu3", AtIteration(it.index));
    }
  }
  if (m.num_soft == 0) {
    if (!m.iterations.empty()) return Structure("iterations recorded without soft clauses");
    if (*m.optimum != 0) {
      return Verdict::Invalid(Reason::kOptimumMismatch, "no soft clauses, optimum must be 0");
    }
    return Verdict::Valid();
  }
  switch (m.algorithm) {
    case Algorithm::kLinearUnsatSat:
      return TransitionsLinearUnsatSat(m);
    case Algorithm::kLinearSatUnsat:
      return TransitionsLinearSatUnsat(m);
    case Algorithm::kBinarySearch:
      return TransitionsBinary(m);
    case Algorithm::kMsu3:
      return TransitionsMsu3(m);
  }
  return Structure("unknown algorithm");
}

Verdict CheckMethod1(const Bundle& b) {
  const RunManifest& m = b.manifest;
  if (Verdict t = CheckTransitions(m); !t.valid) return t;
  if (!m.optimum) {
    Verdict v = CheckHardRecord(b, std::nullopt);
    if (v.valid) v.certificates_checked = 1;
    return v;
  }
  int checked = 0;
  const IterationRecord* last_sat = LastWithStatus(m, IterationStatus::kSatisfiable);
  for (const IterationRecord& it : m.iterations) {
    if (!it.has_certificate()) {
      return Structure(Iter(it) + " has no certificate; method 1 needs every certificate",
                       AtIteration(it.index));
    }
    if (Verdict v = CheckIteration(b, it, &it == last_sat); !v.valid) return v;
    ++checked;
  }
  if (!last_sat) {
    if (Verdict v = CheckHardRecord(b, *m.optimum); !v.valid) return v;
  }
  Verdict mini = CheckMinimality(b.instance, m, MinimalityProof(b));
  if (!mini.valid) return mini;
  return Verdict::Valid(checked + mini.certificates_checked);
}

Verdict CheckMethod2(const Bundle& b, const Method2Options& options) {
  const RunManifest& m = b.manifest;
  if (Verdict t = CheckTransitions(m); !t.valid) return t;
  if (!m.optimum) {
    Verdict v = CheckHardRecord(b, std::nullopt);
    if (v.valid) v.certificates_checked = 1;
    return v;
  }
  const int optimum = *m.optimum;
  int checked = 0;
  if (const IterationRecord* unsat = LastWithStatus(m, IterationStatus::kUnsatisfiable)) {
    if (unsat->bound != optimum - 1) {
      return Structure("last unsatisfiable bound " + std::to_string(unsat->bound) +
                           " is not optimum - 1",
                       AtIteration(unsat->index));
    }
    if (Verdict v = CheckIteration(b, *unsat, false); !v.valid) return v;
    ++checked;
  } else if (optimum > 0) {
    return Structure("optimum above 0 without an unsatisfiable iteration");
  }
  if (const IterationRecord* sat = LastWithStatus(m, IterationStatus::kSatisfiable)) {
    if (Verdict v = CheckIteration(b, *sat, true); !v.valid) return v;
    ++checked;
  } else if (Verdict v = CheckHardRecord(b, optimum); !v.valid) {
    return v;
  }
  if (options.check_minimality) {
    Verdict mini = CheckMinimality(b.instance, m, MinimalityProof(b));
    if (!mini.valid) return mini;
    checked += mini.certificates_checked;
  }
  return Verdict::Valid(checked);
}

Verdict CheckBundleDirectory(const std::filesystem::path& dir, int method) {
  Bundle b;
  try {
    b = ReadBundle(dir);
  } catch (const Error& e) {
    return Structure(e.what());
  }
  if (method == 1) return CheckMethod1(b);
  if (method == 2) return CheckMethod2(b);
  return Structure("method must be 1 or 2");
}

}  // namespace maxcert
