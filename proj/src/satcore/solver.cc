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
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "maxcert/satcore.h"

namespace maxcert::sat {

std::string_view StatusName(Status s) {
  switch (s) {
    case Status::kSatisfiable:
      return "SATISFIABLE";
    case Status::kUnsatisfiable:
      return "UNSATISFIABLE";
    case Status::kUnknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

namespace {

using ClauseRef = std::uint32_t;
constexpr ClauseRef kNoReason = std::numeric_limits<ClauseRef>::max();

constexpr std::int8_t kUndef = 0;
constexpr std::int8_t kTrue = 1;
constexpr std::int8_t kFalse = -1;

struct StoredClause {
  std::vector<Literal> lits;
  double activity = 0;
  bool learnt = false;
  bool deleted = false;
};

struct Watcher {
  ClauseRef cref;
  Literal blocker;
};

// Finite subsequence of the Luby sequence scaled by powers of y.
double Luby(double y, int x) {
  int size = 1;
  int seq = 0;
  for (; size < x + 1; ++seq) size = 2 * size + 1;
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

class Solver::Impl {
 public:
  Impl(int num_vars, SolverOptions options) : opts_(options), rng_(options.seed) {
    AddVars(num_vars);
  }

  int num_vars() const { return num_vars_; }

  int AddVars(int count) {
    if (count < 0) throw RangeError("negative variable count");
    const int old = num_vars_;
    num_vars_ += count;
    const auto n = static_cast<std::size_t>(num_vars_) + 1;
    assigns_.resize(n, kUndef);
    level_.resize(n, 0);
    reason_.resize(n, kNoReason);
    activity_.resize(n, 0.0);
    polarity_.resize(n, 1);
    seen_.resize(n, 0);
    heap_pos_.resize(n, -1);
    watches_.resize(2 * static_cast<std::size_t>(num_vars_));
    std::uniform_real_distribution<double> jitter(0.0, 1e-5);
    for (int v = old + 1; v <= num_vars_; ++v) {
      activity_[v] = jitter(rng_);
      HeapInsert(v);
    }
    return num_vars_;
  }

  void AddClause(std::span<const Literal> clause) {
    CheckClauseRange(clause, num_vars_);
    if (!ok_) return;
    std::vector<Literal> lits(clause.begin(), clause.end());
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t i = 1; i < lits.size(); ++i) {
      if (lits[i] == ~lits[i - 1]) return;  // tautology
    }
    // Level 0 is permanent, so satisfied clauses can be dropped and false
    // literals only matter for picking watches.
    std::stable_partition(lits.begin(), lits.end(),
                          [&](Literal l) { return Value(l) != kFalse; });
    std::size_t open = 0;
    for (Literal l : lits) {
      if (Value(l) == kTrue) return;
      if (Value(l) == kUndef) ++open;
    }
    if (open == 0) {
      ok_ = false;
      return;
    }
    if (open == 1) {
      Enqueue(lits[0], kNoReason);
      return;
    }
    Attach(Store(std::move(lits), false));
  }

  SolveOutcome Solve(std::span<const Literal> assumptions) {
    for (Literal a : assumptions) {
      if (a.var() < 1 || a.var() > num_vars_) {
        throw RangeError("assumption " + std::to_string(a.ToDimacs()) + " out of range");
      }
    }
    assumptions_.assign(assumptions.begin(), assumptions.end());
    conflicts_at_start_ = conflicts_;
    if (max_learnts_ == 0) {
      max_learnts_ = opts_.first_reduce > 0
                         ? opts_.first_reduce
                         : std::max<double>(2000.0, static_cast<double>(db_.size()) / 3.0);
    }

    SolveOutcome out;
    Result r = ok_ ? Result::kRestart : Result::kUnsatRoot;
    for (int restarts = 0; r == Result::kRestart; ++restarts) {
      r = Search(static_cast<std::int64_t>(Luby(2.0, restarts) * opts_.restart_unit));
    }

    switch (r) {
      case Result::kSat: {
        out.status = Status::kSatisfiable;
        Assignment model(num_vars_);
        for (int v = 1; v <= num_vars_; ++v) model.set(v, assigns_[v] == kTrue);
        out.model = std::move(model);
        break;
      }
      case Result::kUnsatRoot:
        out.status = Status::kUnsatisfiable;
        if (!proof_.EndsWithEmptyClause()) Log(ProofStep::Add({}));
        ok_ = false;
        if (!assumptions_.empty()) out.core.emplace();
        if (opts_.log_proof) out.proof = proof_;
        break;
      case Result::kUnsatAssumptions: {
        out.status = Status::kUnsatisfiable;
        Clause negated;
        for (Literal l : final_core_) negated.push_back(~l);
        Log(ProofStep::Add(std::move(negated)));
        out.core = final_core_;
        if (opts_.log_proof) {
          out.proof = proof_;
          out.proof->steps.push_back(ProofStep::Add({}));
        }
        break;
      }
      case Result::kUnknown:
        out.status = Status::kUnknown;
        break;
      case Result::kRestart:
        break;
    }
    CancelUntil(0);
    return out;
  }

  std::int64_t conflicts() const { return conflicts_; }
  std::int64_t decisions() const { return decisions_; }
  std::int64_t deleted_learnts() const { return deleted_learnts_; }

 private:
  enum class Result { kSat, kUnsatRoot, kUnsatAssumptions, kUnknown, kRestart };

  std::int8_t Value(Literal l) const {
    const std::int8_t v = assigns_[l.var()];
    return l.negated() ? static_cast<std::int8_t>(-v) : v;
  }
  int Level() const { return static_cast<int>(trail_lim_.size()); }

  void Log(ProofStep step) {
    if (opts_.log_proof) proof_.steps.push_back(std::move(step));
  }

  ClauseRef Store(std::vector<Literal> lits, bool learnt) {
    db_.push_back(StoredClause{std::move(lits), 0.0, learnt, false});
    const auto cref = static_cast<ClauseRef>(db_.size() - 1);
    if (learnt) learnts_.push_back(cref);
    return cref;
  }

  void Attach(ClauseRef cref) {
    const auto& c = db_[cref].lits;
    watches_[c[0].index()].push_back({cref, c[1]});
    watches_[c[1].index()].push_back({cref, c[0]});
  }

  void Enqueue(Literal l, ClauseRef reason) {
    assigns_[l.var()] = l.negated() ? kFalse : kTrue;
    level_[l.var()] = Level();
    reason_[l.var()] = reason;
    trail_.push_back(l);
  }

  void NewDecisionLevel() { trail_lim_.push_back(trail_.size()); }

  void CancelUntil(int level) {
    if (Level() <= level) return;
    for (std::size_t i = trail_.size(); i-- > trail_lim_[level];) {
      const int v = trail_[i].var();
      polarity_[v] = trail_[i].negated() ? 1 : 0;
      assigns_[v] = kUndef;
      reason_[v] = kNoReason;
      if (heap_pos_[v] < 0) HeapInsert(v);
    }
    trail_.resize(trail_lim_[level]);
    trail_lim_.resize(level);
    qhead_ = trail_.size();
  }

  ClauseRef Propagate() {
    ClauseRef conflict = kNoReason;
    while (qhead_ < trail_.size()) {
      const Literal p = trail_[qhead_++];
      const Literal false_lit = ~p;
      auto& ws = watches_[false_lit.index()];
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < ws.size()) {
        const Watcher w = ws[i];
        if (Value(w.blocker) == kTrue) {
          ws[j++] = ws[i++];
          continue;
        }
        StoredClause& sc = db_[w.cref];
        if (sc.deleted) {
          ++i;
          continue;
        }
        auto& c = sc.lits;
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        ++i;
        const Literal first = c[0];
        if (first != w.blocker && Value(first) == kTrue) {
          ws[j++] = {w.cref, first};
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (Value(c[k]) != kFalse) {
            std::swap(c[1], c[k]);
            watches_[c[1].index()].push_back({w.cref, first});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = {w.cref, first};
        if (Value(first) == kFalse) {
          conflict = w.cref;
          qhead_ = trail_.size();
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          Enqueue(first, w.cref);
        }
      }
      ws.resize(j);
      if (conflict != kNoReason) break;
    }
    return conflict;
  }

  // First-UIP learning. Returns the learned clause (asserting literal first)
  // and the backjump level.
  std::pair<std::vector<Literal>, int> Analyze(ClauseRef conflict) {
    std::vector<Literal> learnt(1);
    int path = 0;
    Literal p;
    bool have_p = false;
    std::size_t index = trail_.size();

    do {
      StoredClause& c = db_[conflict];
      if (c.learnt) BumpClause(c);
      for (std::size_t k = have_p ? 1 : 0; k < c.lits.size(); ++k) {
        const Literal q = c.lits[k];
        const int v = q.var();
        if (!seen_[v] && level_[v] > 0) {
          BumpVar(v);
          seen_[v] = 1;
          if (level_[v] >= Level()) {
            ++path;
          } else {
            learnt.push_back(q);
          }
        }
      }
      while (!seen_[trail_[--index].var()]) {
      }
      p = trail_[index];
      have_p = true;
      conflict = reason_[p.var()];
      seen_[p.var()] = 0;
      --path;
    } while (path > 0);
    learnt[0] = ~p;

    // Drop literals implied by the rest of the clause.
    std::vector<Literal> to_clear(learnt.begin() + 1, learnt.end());
    std::size_t keep = 1;
    for (std::size_t k = 1; k < learnt.size(); ++k) {
      const ClauseRef r = reason_[learnt[k].var()];
      bool redundant = r != kNoReason;
      if (redundant) {
        const auto& rc = db_[r].lits;
        for (std::size_t m = 1; m < rc.size(); ++m) {
          const int v = rc[m].var();
          if (!seen_[v] && level_[v] > 0) {
            redundant = false;
            break;
          }
        }
      }
      if (!redundant) learnt[keep++] = learnt[k];
    }
    learnt.resize(keep);
    for (Literal l : to_clear) seen_[l.var()] = 0;

    int backjump = 0;
    if (learnt.size() > 1) {
      std::size_t max_i = 1;
      for (std::size_t k = 2; k < learnt.size(); ++k) {
        if (level_[learnt[k].var()] > level_[learnt[max_i].var()]) max_i = k;
      }
      std::swap(learnt[1], learnt[max_i]);
      backjump = level_[learnt[1].var()];
    }
    return {std::move(learnt), backjump};
  }

  // Assumptions responsible for `failed` (an assumption currently false).
  void AnalyzeFinal(Literal failed) {
    final_core_.assign(1, failed);
    if (level_[failed.var()] == 0) return;
    seen_[failed.var()] = 1;
    for (std::size_t i = trail_.size(); i-- > trail_lim_[0];) {
      const int v = trail_[i].var();
      if (!seen_[v]) continue;
      if (reason_[v] == kNoReason) {
        if (trail_[i] != failed) final_core_.push_back(trail_[i]);
      } else {
        const auto& c = db_[reason_[v]].lits;
        for (std::size_t k = 1; k < c.size(); ++k) {
          if (level_[c[k].var()] > 0) seen_[c[k].var()] = 1;
        }
      }
      seen_[v] = 0;
    }
    seen_[failed.var()] = 0;
  }

  bool Locked(ClauseRef cref) const {
    const auto& c = db_[cref].lits;
    return reason_[c[0].var()] == cref && Value(c[0]) == kTrue;
  }

  void ReduceDb() {
    std::vector<ClauseRef> live;
    for (ClauseRef cref : learnts_) {
      if (!db_[cref].deleted) live.push_back(cref);
    }
    std::stable_sort(live.begin(), live.end(), [&](ClauseRef a, ClauseRef b) {
      return db_[a].activity < db_[b].activity;
    });
    const std::size_t half = live.size() / 2;
    std::vector<ClauseRef> kept;
    for (std::size_t i = 0; i < live.size(); ++i) {
      StoredClause& c = db_[live[i]];
      if (i < half && c.lits.size() > 2 && !Locked(live[i])) {
        Log(ProofStep::Delete(c.lits));
        c.deleted = true;
        c.lits.clear();
        c.lits.shrink_to_fit();
        ++deleted_learnts_;
      } else {
        kept.push_back(live[i]);
      }
    }
    learnts_ = std::move(kept);
    max_learnts_ *= 1.1;
  }

  Result Search(std::int64_t conflict_limit) {
    std::int64_t local_conflicts = 0;
    for (;;) {
      const ClauseRef conflict = Propagate();
      if (conflict != kNoReason) {
        ++conflicts_;
        ++local_conflicts;
        if (Level() == 0) return Result::kUnsatRoot;
        auto [learnt, backjump] = Analyze(conflict);
        CancelUntil(backjump);
        Log(ProofStep::Add(learnt));
        if (learnt.size() == 1) {
          Enqueue(learnt[0], kNoReason);
        } else {
          const Literal asserting = learnt[0];
          const ClauseRef cref = Store(std::move(learnt), true);
          Attach(cref);
          BumpClause(db_[cref]);
          Enqueue(asserting, cref);
        }
        var_inc_ /= opts_.var_decay;
        cla_inc_ /= 0.999;
        continue;
      }

      if (opts_.conflict_budget && conflicts_ - conflicts_at_start_ >= *opts_.conflict_budget) {
        CancelUntil(0);
        return Result::kUnknown;
      }
      if (local_conflicts >= conflict_limit) {
        CancelUntil(0);
        return Result::kRestart;
      }
      if (static_cast<double>(learnts_.size()) >= max_learnts_) ReduceDb();

      Literal next;
      bool have_next = false;
      while (static_cast<std::size_t>(Level()) < assumptions_.size()) {
        const Literal a = assumptions_[static_cast<std::size_t>(Level())];
        if (Value(a) == kTrue) {
          NewDecisionLevel();
        } else if (Value(a) == kFalse) {
          AnalyzeFinal(a);
          return Result::kUnsatAssumptions;
        } else {
          next = a;
          have_next = true;
          break;
        }
      }
      if (!have_next) {
        const int v = PickBranchVar();
        if (v == 0) return Result::kSat;
        next = Literal(v, polarity_[v] != 0);
        ++decisions_;
      }
      NewDecisionLevel();
      Enqueue(next, kNoReason);
    }
  }

  void BumpVar(int v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
      for (int u = 1; u <= num_vars_; ++u) activity_[u] *= 1e-100;
      var_inc_ *= 1e-100;
    }
    if (heap_pos_[v] >= 0) HeapUp(static_cast<std::size_t>(heap_pos_[v]));
  }

  void BumpClause(StoredClause& c) {
    c.activity += cla_inc_;
    if (c.activity > 1e20) {
      for (ClauseRef cref : learnts_) db_[cref].activity *= 1e-20;
      cla_inc_ *= 1e-20;
    }
  }

  int PickBranchVar() {
    while (!heap_.empty()) {
      const int v = HeapPop();
      if (assigns_[v] == kUndef) return v;
    }
    return 0;
  }

  // Max-heap on activity; ties go to the lower variable id.
  bool Before(int a, int b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }
  void HeapInsert(int v) {
    heap_pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    HeapUp(heap_.size() - 1);
  }
  void HeapUp(std::size_t i) {
    const int v = heap_[i];
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!Before(v, heap_[parent])) break;
      heap_[i] = heap_[parent];
      heap_pos_[heap_[i]] = static_cast<int>(i);
      i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = static_cast<int>(i);
  }
  void HeapDown(std::size_t i) {
    const int v = heap_[i];
    for (;;) {
      std::size_t child = 2 * i + 1;
      if (child >= heap_.size()) break;
      if (child + 1 < heap_.size() && Before(heap_[child + 1], heap_[child])) ++child;
      if (!Before(heap_[child], v)) break;
      heap_[i] = heap_[child];
      heap_pos_[heap_[i]] = static_cast<int>(i);
      i = child;
    }
    heap_[i] = v;
    heap_pos_[v] = static_cast<int>(i);
  }
  int HeapPop() {
    const int top = heap_.front();
    heap_pos_[top] = -1;
    const int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_[0] = last;
      heap_pos_[last] = 0;
      HeapDown(0);
    }
    return top;
  }

  SolverOptions opts_;
  std::mt19937_64 rng_;
  int num_vars_ = 0;
  bool ok_ = true;

  std::vector<StoredClause> db_;
  std::vector<ClauseRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;

  std::vector<std::int8_t> assigns_;
  std::vector<int> level_;
  std::vector<ClauseRef> reason_;
  std::vector<Literal> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  std::vector<std::uint8_t> polarity_;
  std::vector<std::uint8_t> seen_;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  double max_learnts_ = 0;

  std::vector<Literal> assumptions_;
  std::vector<Literal> final_core_;
  ProofTrace proof_;

  std::int64_t conflicts_ = 0;
  std::int64_t conflicts_at_start_ = 0;
  std::int64_t decisions_ = 0;
  std::int64_t deleted_learnts_ = 0;
};

Solver::Solver(int num_vars, SolverOptions options)
    : impl_(std::make_unique<Impl>(num_vars, options)) {}
Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

int Solver::num_vars() const { return impl_->num_vars(); }
int Solver::AddVars(int count) { return impl_->AddVars(count); }
void Solver::AddClause(std::span<const Literal> clause) { impl_->AddClause(clause); }
SolveOutcome Solver::Solve(std::span<const Literal> assumptions) {
  return impl_->Solve(assumptions);
}
std::int64_t Solver::conflicts() const { return impl_->conflicts(); }
std::int64_t Solver::decisions() const { return impl_->decisions(); }
std::int64_t Solver::deleted_learnts() const { return impl_->deleted_learnts(); }

SolveOutcome Solve(const CnfFormula& f, std::span<const Literal> assumptions,
                   const SolverOptions& options) {
  Solver solver(f.num_vars, options);
  for (const Clause& c : f.clauses) solver.AddClause(c);
  return solver.Solve(assumptions);
}

std::vector<Literal> ExtractCore(const SolveOutcome& outcome) {
  if (outcome.status != Status::kUnsatisfiable) {
    throw ContractError("core requested from a " + std::string(StatusName(outcome.status)) +
                        " outcome");
  }
  if (!outcome.core) throw ContractError("outcome was not produced under assumptions");
  return *outcome.core;
}

void WriteProof(const ProofTrace& proof, std::ostream& sink) {
  for (const ProofStep& step : proof.steps) {
    if (step.kind == ProofStep::Kind::kDelete) sink << "d ";
    for (Literal l : step.clause) sink << l.ToDimacs() << ' ';
    sink << "0\n";
  }
  if (!sink) throw Error("failed to write proof");
}

std::string ProofToString(const ProofTrace& proof) {
  std::ostringstream out;
  WriteProof(proof, out);
  return out.str();
}

}  // namespace maxcert::sat
