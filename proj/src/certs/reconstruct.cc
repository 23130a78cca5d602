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

#include <vector>

#include "maxcert/cardenc.h"
#include "maxcert/certs.h"

namespace maxcert {

RelaxedFormula BuildPartiallyRelaxed(const WcnfInstance& inst, const std::vector<int>& relaxed_ids) {
  const int n = inst.num_vars;
  std::vector<int> relax_var(inst.soft.size() + 1, 0);
  RelaxedFormula out;
  for (std::size_t pos = 0; pos < relaxed_ids.size(); ++pos) {
    const int id = relaxed_ids[pos];
    if (id < 1 || static_cast<std::size_t>(id) > inst.soft.size()) {
      throw ReconstructionError("relaxed soft_id " + std::to_string(id) + " out of range");
    }
    if (relax_var[id] != 0) {
      throw ReconstructionError("soft_id " + std::to_string(id) + " relaxed twice");
    }
    relax_var[id] = n + static_cast<int>(pos) + 1;
    out.relaxation.push_back(Literal::Positive(relax_var[id]));
  }

  out.formula.num_vars = n + static_cast<int>(relaxed_ids.size());
  out.formula.clauses = inst.hard;
  for (std::size_t i = 0; i < inst.soft.size(); ++i) {
    Clause c = inst.soft[i];
    if (const int r = relax_var[i + 1]; r != 0) c.push_back(Literal::Positive(r));
    out.formula.clauses.push_back(std::move(c));
  }
  return out;
}

RelaxedFormula BuildAllRelaxed(const WcnfInstance& inst) {
  std::vector<int> ids(inst.soft.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i) + 1;
  return BuildPartiallyRelaxed(inst, ids);
}

std::vector<int> RelaxedBefore(const RunManifest& m, int index) {
  std::vector<int> ids;
  std::vector<bool> used(static_cast<std::size_t>(std::max(m.num_soft, 0)) + 1, false);
  for (const IterationRecord& it : m.iterations) {
    if (it.index >= index) break;
    for (int id : it.newly_relaxed) {
      if (id < 1 || id > m.num_soft) {
        throw BundleError(BundleError::Kind::kSchema,
                          "iteration " + std::to_string(it.index) + " relaxes soft_id " +
                              std::to_string(id) + " out of range");
      }
      if (used[static_cast<std::size_t>(id)]) {
        throw BundleError(BundleError::Kind::kSchema,
                          "soft_id " + std::to_string(id) + " relaxed more than once");
      }
      used[static_cast<std::size_t>(id)] = true;
      ids.push_back(id);
    }
  }
  return ids;
}

namespace {

IterationInstance WithCardinality(RelaxedFormula relaxed, int bound, int aux_base, bool strict) {
  const int expected_base = relaxed.formula.num_vars + 1;
  if (aux_base != expected_base) {
    throw ReconstructionError("auxiliary base " + std::to_string(aux_base) + ", layout requires " +
                              std::to_string(expected_base));
  }
  if (bound < 0) throw ReconstructionError("negative bound " + std::to_string(bound));
  const AtMostEncoding enc = strict ? EncodeStrictlyLess(relaxed.relaxation, bound, aux_base)
                                    : EncodeAtMost(relaxed.relaxation, bound, aux_base);
  IterationInstance out;
  out.formula = std::move(relaxed.formula);
  out.formula.num_vars = enc.next_free_var() - 1;
  out.formula.clauses.insert(out.formula.clauses.end(), enc.clauses.begin(), enc.clauses.end());
  out.relaxation = std::move(relaxed.relaxation);
  return out;
}

}  // namespace

IterationInstance ReconstructIteration(const WcnfInstance& inst, const RunManifest& m, int index) {
  if (index < 1 || static_cast<std::size_t>(index) > m.iterations.size()) {
    throw ReconstructionError("iteration " + std::to_string(index) + " outside 1.." +
                              std::to_string(m.iterations.size()));
  }
  const IterationRecord& it = m.iterations[static_cast<std::size_t>(index - 1)];
  RelaxedFormula relaxed;
  try {
    relaxed = m.algorithm == Algorithm::kMsu3 ? BuildPartiallyRelaxed(inst, RelaxedBefore(m, index))
                                              : BuildAllRelaxed(inst);
  } catch (const BundleError& e) {
    throw ReconstructionError(e.what());
  }
  return WithCardinality(std::move(relaxed), it.bound, it.aux_base, false);
}

CnfFormula ReconstructInstance(const WcnfInstance& inst, const RunManifest& m, int index) {
  return ReconstructIteration(inst, m, index).formula;
}

IterationInstance BuildMinimalityInstance(const WcnfInstance& inst, int optimum) {
  RelaxedFormula relaxed = BuildAllRelaxed(inst);
  const int base = relaxed.formula.num_vars + 1;
  if (optimum < 1) throw ReconstructionError("minimality needs an optimum of at least 1");
  return WithCardinality(std::move(relaxed), optimum, base, true);
}

}  // namespace maxcert
