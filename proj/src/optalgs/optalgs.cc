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

#include "maxcert/optalgs.h"

#include <algorithm>

#include "maxcert/cardenc.h"

namespace maxcert {

std::vector<Literal> RelaxationMap::Literals() const {
  std::vector<int> vars;
  for (const auto& [id, var] : entries) vars.push_back(var);
  std::sort(vars.begin(), vars.end());
  std::vector<Literal> out;
  for (int v : vars) out.push_back(Literal::Positive(v));
  return out;
}

std::pair<CnfFormula, RelaxationMap> RelaxAll(const WcnfInstance& inst) {
  CnfFormula f;
  RelaxationMap relax;
  relax.next_fresh = inst.num_vars + 1;
  f.clauses = inst.hard;
  for (std::size_t i = 0; i < inst.soft.size(); ++i) {
    const int r = relax.next_fresh++;
    relax.entries[static_cast<int>(i) + 1] = r;
    Clause c = inst.soft[i];
    c.push_back(Literal::Positive(r));
    f.clauses.push_back(std::move(c));
  }
  f.num_vars = relax.next_fresh - 1;
  return {std::move(f), std::move(relax)};
}

sat::SolveOutcome CheckHardFeasible(const WcnfInstance& inst, const RunOptions& options) {
  CnfFormula hard{inst.num_vars, inst.hard};
  sat::SolverOptions so;
  so.seed = options.seed;
  so.log_proof = true;
  so.conflict_budget = options.conflict_budget;
  return sat::Solve(hard, {}, so);
}

ProofTrace ProjectSelectors(const ProofTrace& proof, int num_vars) {
  ProofTrace out;
  for (const ProofStep& step : proof.steps) {
    Clause projected;
    bool satisfied = false;
    for (Literal l : step.clause) {
      if (l.var() <= num_vars) {
        projected.push_back(l);
      } else if (!l.negated()) {
        satisfied = true;
      }
    }
    if (satisfied) continue;
    const bool is_empty_add = step.kind == ProofStep::Kind::kAdd && projected.empty();
    out.steps.push_back({step.kind, std::move(projected)});
    if (is_empty_add) break;
  }
  return out;
}

namespace {

int CountTrue(const Assignment& a, const std::vector<Literal>& lits) {
  int n = 0;
  for (Literal l : lits) n += a.satisfies(l) ? 1 : 0;
  return n;
}

std::string ProofFileName(int index) { return "proof_" + std::to_string(index) + ".drup"; }

// Shared bookkeeping for one optimisation run.
class RunBuilder {
 public:
  RunBuilder(const WcnfInstance& inst, Algorithm alg, const RunOptions& options)
      : inst_(inst), options_(options) {
    RunManifest& m = result_.manifest;
    m.num_vars = inst.num_vars;
    m.num_hard = static_cast<int>(inst.hard.size());
    m.num_soft = static_cast<int>(inst.soft.size());
    m.algorithm = alg;
    m.cert_mode = options.cert_mode;
    m.encoding = std::string(kSequentialCounterId);
    m.seed = options.seed;
    m.relaxation_base = inst.num_vars + 1;
  }

  bool all_mode() const { return certs() && options_.cert_mode == CertMode::kAll; }
  bool certs() const { return options_.generate_certificates; }

  // Records the hard-feasibility outcome; false when the run ends infeasible.
  bool CheckHard() {
    sat::SolveOutcome out = CheckHardFeasible(inst_, options_);
    HardFeasibilityRecord& rec = result_.manifest.hard_feasibility;
    if (out.status == sat::Status::kUnknown) throw SolverLimitError("conflict budget exhausted");
    if (out.status == sat::Status::kSatisfiable) {
      rec.status = IterationStatus::kSatisfiable;
      rec.model = out.model->Restrict(inst_.num_vars).ToDimacs();
      return true;
    }
    rec.status = IterationStatus::kUnsatisfiable;
    rec.proof_file = "proof_hard.drup";
    result_.proofs[*rec.proof_file] = sat::ProofToString(*out.proof);
    result_.optimum.reset();
    return false;
  }

  sat::SolverOptions SolverOptions(bool log_proof) const {
    sat::SolverOptions so;
    so.seed = options_.seed;
    so.log_proof = log_proof;
    so.conflict_budget = options_.conflict_budget;
    return so;
  }

  IterationRecord& BeginIteration(BoundKind kind, int bound, int aux_base,
                                  const CnfFormula& formula) {
    IterationRecord rec;
    rec.index = static_cast<int>(result_.manifest.iterations.size()) + 1;
    rec.bound_kind = kind;
    rec.bound = bound;
    rec.aux_base = aux_base;
    if (options_.on_iteration) options_.on_iteration(rec.index, formula);
    result_.manifest.iterations.push_back(std::move(rec));
    return result_.manifest.iterations.back();
  }

  void RecordSat(IterationRecord& rec, const Assignment& model, int relaxed_true) {
    rec.status = IterationStatus::kSatisfiable;
    rec.relaxed_true = relaxed_true;
    if (certs()) rec.model = model.ToDimacs();
  }

  void RecordUnsat(IterationRecord& rec, const std::optional<ProofTrace>& proof,
                   CnfFormula formula) {
    rec.status = IterationStatus::kUnsatisfiable;
    if (all_mode()) {
      if (!proof) throw InternalError("proof logging was requested but no proof was produced");
      rec.proof_file = ProofFileName(rec.index);
      result_.proofs[*rec.proof_file] = sat::ProofToString(*proof);
    }
    last_unsat_formula_ = std::move(formula);
  }

  // Certificate pruning for LAST mode and the optional minimality proof.
  RunResult Finish(int optimum, bool with_minimality) {
    result_.optimum = optimum;
    result_.manifest.optimum = optimum;
    auto& its = result_.manifest.iterations;

    if (certs() && options_.cert_mode == CertMode::kLast) {
      int last_sat = 0;
      int last_unsat = 0;
      for (const IterationRecord& it : its) {
        (it.status == IterationStatus::kSatisfiable ? last_sat : last_unsat) = it.index;
      }
      for (IterationRecord& it : its) {
        if (it.index != last_sat) it.model.reset();
      }
      if (last_unsat != 0) {
        // Re-derive the one proof that Method 2 needs.
        sat::SolveOutcome out = sat::Solve(*last_unsat_formula_, {}, SolverOptions(true));
        if (out.status != sat::Status::kUnsatisfiable) {
          throw InternalError("final unsatisfiable iteration did not reproduce");
        }
        IterationRecord& it = its[static_cast<std::size_t>(last_unsat - 1)];
        it.proof_file = ProofFileName(last_unsat);
        result_.proofs[*it.proof_file] = sat::ProofToString(*out.proof);
      }
    }

    if (certs() && with_minimality && optimum >= 1) {
      auto [formula, relax] = RelaxAll(inst_);
      const int base = formula.num_vars + 1;
      const AtMostEncoding enc = EncodeStrictlyLess(relax.Literals(), optimum, base);
      formula.num_vars = enc.next_free_var() - 1;
      formula.clauses.insert(formula.clauses.end(), enc.clauses.begin(), enc.clauses.end());
      sat::SolveOutcome out = sat::Solve(formula, {}, SolverOptions(true));
      if (out.status != sat::Status::kUnsatisfiable) {
        throw InternalError("reported optimum " + std::to_string(optimum) + " is not minimal");
      }
      MinimalityRecord rec{optimum, base, "proof_minimality.drup"};
      result_.proofs[rec.proof_file] = sat::ProofToString(*out.proof);
      result_.manifest.minimality = rec;
    }
    return std::move(result_);
  }

  RunResult Infeasible() { return std::move(result_); }

 private:
  const WcnfInstance& inst_;
  const RunOptions& options_;
  RunResult result_;
  std::optional<CnfFormula> last_unsat_formula_;
};

struct BoundedInstance {
  CnfFormula formula;
  std::vector<Literal> relaxation;
  int aux_base = 0;
};

BoundedInstance WithAtMost(const CnfFormula& working, std::vector<Literal> relaxation, int bound) {
  BoundedInstance out;
  out.aux_base = working.num_vars + 1;
  const AtMostEncoding enc = EncodeAtMost(relaxation, bound, out.aux_base);
  out.formula = working;
  out.formula.num_vars = enc.next_free_var() - 1;
  out.formula.clauses.insert(out.formula.clauses.end(), enc.clauses.begin(), enc.clauses.end());
  out.relaxation = std::move(relaxation);
  return out;
}

struct IterationOutcome {
  IterationStatus status;
  int relaxed_true = 0;
};

// One SAT call on the all-relaxed working formula at `bound`.
IterationOutcome SolveRelaxedIteration(RunBuilder& run, const CnfFormula& working,
                                       const RelaxationMap& relax, BoundKind kind, int bound) {
  BoundedInstance bi = WithAtMost(working, relax.Literals(), bound);
  IterationRecord& rec = run.BeginIteration(kind, bound, bi.aux_base, bi.formula);
  sat::SolveOutcome out = sat::Solve(bi.formula, {}, run.SolverOptions(run.all_mode()));
  switch (out.status) {
    case sat::Status::kSatisfiable: {
      const int count = CountTrue(*out.model, bi.relaxation);
      run.RecordSat(rec, *out.model, count);
      return {IterationStatus::kSatisfiable, count};
    }
    case sat::Status::kUnsatisfiable:
      run.RecordUnsat(rec, out.proof, std::move(bi.formula));
      return {IterationStatus::kUnsatisfiable, 0};
    case sat::Status::kUnknown:
      break;
  }
  throw SolverLimitError("conflict budget exhausted at iteration " + std::to_string(rec.index));
}

}  // namespace

RunResult LinearSearchUnsatSat(const WcnfInstance& inst, const RunOptions& options) {
  RunBuilder run(inst, Algorithm::kLinearUnsatSat, options);
  if (!run.CheckHard()) return run.Infeasible();
  if (inst.soft.empty()) return run.Finish(0, false);

  const auto [working, relax] = RelaxAll(inst);
  for (int lambda = 0;; ++lambda) {
    if (lambda > static_cast<int>(inst.soft.size())) {
      throw InternalError("lower bound exceeded the number of soft clauses");
    }
    const IterationOutcome r =
        SolveRelaxedIteration(run, working, relax, BoundKind::kLambda, lambda);
    if (r.status == IterationStatus::kSatisfiable) return run.Finish(lambda, false);
  }
}

RunResult LinearSearchSatUnsat(const WcnfInstance& inst, const RunOptions& options) {
  RunBuilder run(inst, Algorithm::kLinearSatUnsat, options);
  if (!run.CheckHard()) return run.Infeasible();
  if (inst.soft.empty()) return run.Finish(0, false);

  const auto [working, relax] = RelaxAll(inst);
  int mu = static_cast<int>(inst.soft.size());
  // The first bound is vacuous; afterwards each model must strictly improve.
  int bound = mu;
  for (;;) {
    const IterationOutcome r = SolveRelaxedIteration(run, working, relax, BoundKind::kMu, bound);
    if (r.status == IterationStatus::kUnsatisfiable) return run.Finish(mu, false);
    mu = r.relaxed_true;
    if (mu == 0) return run.Finish(0, false);
    bound = mu - 1;
  }
}

RunResult BinarySearch(const WcnfInstance& inst, const RunOptions& options) {
  RunBuilder run(inst, Algorithm::kBinarySearch, options);
  if (!run.CheckHard()) return run.Infeasible();

  const auto [working, relax] = RelaxAll(inst);
  int mu = static_cast<int>(inst.soft.size());
  int lambda = -1;
  while (mu > lambda + 1) {
    const int tau = (mu + lambda) / 2;  // mu + lambda >= 0 here
    const IterationOutcome r = SolveRelaxedIteration(run, working, relax, BoundKind::kTau, tau);
    if (r.status == IterationStatus::kSatisfiable) {
      mu = r.relaxed_true;
    } else {
      lambda = tau;
    }
  }
  return run.Finish(mu, false);
}

RunResult Msu3(const WcnfInstance& inst, const RunOptions& options) {
  RunBuilder run(inst, Algorithm::kMsu3, options);
  if (!run.CheckHard()) return run.Infeasible();
  if (inst.soft.empty()) return run.Finish(0, true);

  const int n = inst.num_vars;
  const int num_soft = static_cast<int>(inst.soft.size());
  RelaxationMap relax;
  relax.next_fresh = n + 1;

  for (int lambda = 0;; ++lambda) {
    if (lambda > num_soft) throw InternalError("msu3 bound exceeded the number of soft clauses");

    CnfFormula working;
    working.clauses = inst.hard;
    for (int id = 1; id <= num_soft; ++id) {
      Clause c = inst.soft_clause(id);
      if (auto it = relax.entries.find(id); it != relax.entries.end()) {
        c.push_back(Literal::Positive(it->second));
      }
      working.clauses.push_back(std::move(c));
    }
    working.num_vars = relax.next_fresh - 1;
    BoundedInstance bi = WithAtMost(working, relax.Literals(), lambda);
    IterationRecord& rec = run.BeginIteration(BoundKind::kLambda, lambda, bi.aux_base, bi.formula);

    // Unrelaxed soft clause `id` becomes (soft v ~s) with selector s assumed
    // true, so the final conflict names the soft clauses of a core.
    const int num_vars = bi.formula.num_vars;
    sat::Solver solver(num_vars, run.SolverOptions(run.all_mode()));
    std::vector<Literal> assumptions;
    std::map<int, int> selector_to_id;
    const std::size_t first_soft = inst.hard.size();
    for (std::size_t i = 0; i < bi.formula.clauses.size(); ++i) {
      const bool soft = i >= first_soft && i < first_soft + inst.soft.size();
      const int id = static_cast<int>(i - first_soft) + 1;
      if (soft && !relax.entries.contains(id)) {
        const int s = num_vars + static_cast<int>(assumptions.size()) + 1;
        solver.AddVars(1);
        Clause c = bi.formula.clauses[i];
        c.push_back(Literal::Negative(s));
        solver.AddClause(c);
        assumptions.push_back(Literal::Positive(s));
        selector_to_id[s] = id;
      } else {
        solver.AddClause(bi.formula.clauses[i]);
      }
    }

    sat::SolveOutcome out = solver.Solve(assumptions);
    if (out.status == sat::Status::kUnknown) {
      throw SolverLimitError("conflict budget exhausted at iteration " + std::to_string(rec.index));
    }
    if (out.status == sat::Status::kSatisfiable) {
      const Assignment model = out.model->Restrict(num_vars);
      run.RecordSat(rec, model, CountTrue(model, bi.relaxation));
      return run.Finish(lambda, true);
    }

    std::vector<int> core_ids;
    for (Literal l : sat::ExtractCore(out)) {
      auto it = selector_to_id.find(l.var());
      if (it == selector_to_id.end()) throw InternalError("core literal is not a selector");
      core_ids.push_back(it->second);
    }
    std::sort(core_ids.begin(), core_ids.end());
    std::optional<ProofTrace> projected;
    if (out.proof) projected = ProjectSelectors(*out.proof, num_vars);
    run.RecordUnsat(rec, projected, std::move(bi.formula));
    for (int id : core_ids) relax.entries[id] = relax.next_fresh++;
    rec.newly_relaxed = std::move(core_ids);
  }
}

RunResult RunAlgorithm(Algorithm alg, const WcnfInstance& inst, const RunOptions& options) {
  switch (alg) {
    case Algorithm::kLinearUnsatSat:
      return LinearSearchUnsatSat(inst, options);
    case Algorithm::kLinearSatUnsat:
      return LinearSearchSatUnsat(inst, options);
    case Algorithm::kBinarySearch:
      return BinarySearch(inst, options);
    case Algorithm::kMsu3:
      return Msu3(inst, options);
  }
  throw InternalError("unknown algorithm");
}

Bundle MakeBundle(const RunResult& result, const WcnfInstance& inst, std::string instance_bytes) {
  Bundle b;
  b.instance = inst;
  b.manifest = result.manifest;
  b.manifest.instance_sha256 = Sha256Hex(instance_bytes);
  b.instance_bytes = std::move(instance_bytes);
  b.proofs = result.proofs;
  return b;
}

}  // namespace maxcert
